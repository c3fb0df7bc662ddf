"""Simple graphs on [n+1] and their connected induced subgraphs.

Vertex labels are 1-based. Subsets are handled internally as bitmasks with
bit ``i - 1`` standing for vertex ``i``.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from graphwidth.core.errors import InputError, ResourceLimitError
from graphwidth.models import ConfigModel

logger = logging.getLogger("graph-width")

DEFAULT_CONFIG = ConfigModel()


def bit(label: int) -> int:
    return 1 << (label - 1)


def mask_of(labels: Iterable[int]) -> int:
    mask = 0
    for label in labels:
        mask |= bit(label)
    return mask


def labels_of(mask: int) -> Tuple[int, ...]:
    """Return the sorted labels of the set bits of ``mask``."""
    labels = []
    label = 1
    while mask:
        if mask & 1:
            labels.append(label)
        mask >>= 1
        label += 1
    return tuple(labels)


def full_mask(size: int) -> int:
    return (1 << size) - 1


def canonical_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on labels."""
    labels = labels_of(mask)
    return len(labels), labels


@dataclass(frozen=True)
class KVector:
    """Number of connected induced subgraphs containing each vertex."""

    values: Tuple[int, ...]

    def at(self, label: int) -> int:
        return self.values[label - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def pivot(self) -> Optional[int]:
        """Smallest label attaining the minimal k_i among k_i > 1."""
        candidates = [(k, label) for label, k in enumerate(self.values, start=1) if k > 1]
        if not candidates:
            return None
        return min(candidates)[1]

    def is_minimizer(self, label: int) -> bool:
        nontrivial = [k for k in self.values if k > 1]
        return bool(nontrivial) and self.at(label) == min(nontrivial)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertex set [vertex_count].

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``.
    """

    vertex_count: int
    edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InputError(f"Graph needs at least one vertex, got {self.vertex_count}")
        for edge in self.edges:
            i, j = edge
            if i == j:
                raise InputError(f"Self-loop at vertex {i}")
            if not (i < j):
                raise InputError(f"Edge {edge} is not normalized as (smaller, larger)")
            if not (1 <= i and j <= self.vertex_count):
                raise InputError(f"Edge {edge} leaves the vertex set [1..{self.vertex_count}]")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from unordered pairs, rejecting loops and duplicates."""
        normalized = set()
        for pair in edges:
            if len(pair) != 2:
                raise InputError(f"Edge {tuple(pair)} must have exactly two endpoints")
            i, j = int(pair[0]), int(pair[1])
            if i == j:
                raise InputError(f"Self-loop at vertex {i}")
            edge = (min(i, j), max(i, j))
            if edge in normalized:
                raise InputError(f"Duplicate edge {edge}")
            normalized.add(edge)
        return cls(vertex_count, frozenset(normalized))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Tuple["Graph", Tuple]:
        """Convert a networkx graph, numbering its nodes 1.. in sorted order.

        Returns:
            Tuple of (graph, original node of each new label)
        """
        nodes = tuple(sorted(graph.nodes()))
        index = {node: position for position, node in enumerate(nodes, start=1)}
        edges = [(index[u], index[v]) for u, v in graph.edges() if u != v]
        return cls.from_edges(len(nodes), edges), nodes

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.vertex_count + 1))
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def adjacency(self) -> Tuple[int, ...]:
        """Neighbour bitmask of every vertex, indexed from 0."""
        adjacency = [0] * self.vertex_count
        for i, j in self.edges:
            adjacency[i - 1] |= bit(j)
            adjacency[j - 1] |= bit(i)
        return tuple(adjacency)

    @property
    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Rename vertex ``v`` to ``permutation[v - 1]``."""
        if sorted(permutation) != list(range(1, self.vertex_count + 1)):
            raise InputError(f"{tuple(permutation)} is not a permutation of [1..{self.vertex_count}]")
        return Graph.from_edges(
            self.vertex_count,
            [(permutation[i - 1], permutation[j - 1]) for i, j in self.edges],
        )

    def is_subgraph_of(self, other: "Graph", embedding: Optional[Sequence[int]] = None) -> bool:
        """Check that mapping vertex ``v`` to ``embedding[v - 1]`` embeds this graph in ``other``.

        Without an embedding the identity on [vertex_count] is used.
        """
        if embedding is None:
            embedding = range(1, self.vertex_count + 1)
        embedding = list(embedding)
        if len(embedding) != self.vertex_count or len(set(embedding)) != len(embedding):
            return False
        if any(not (1 <= v <= other.vertex_count) for v in embedding):
            return False
        for i, j in self.edges:
            a, b = embedding[i - 1], embedding[j - 1]
            if (min(a, b), max(a, b)) not in other.edges:
                return False
        return True


def transposition(size: int, a: int, b: int) -> Tuple[int, ...]:
    """Permutation of [size] exchanging ``a`` and ``b``."""
    permutation = list(range(1, size + 1))
    permutation[a - 1], permutation[b - 1] = b, a
    return tuple(permutation)


def _check_subset(g: Graph, s: Iterable[int]) -> int:
    labels = set(s)
    if not labels:
        raise InputError("Vertex subset must be nonempty")
    outside = [v for v in labels if not (1 <= v <= g.vertex_count)]
    if outside:
        raise InputError(f"Vertices {sorted(outside)} are not in [1..{g.vertex_count}]")
    return mask_of(labels)


def _mask_is_connected(adjacency: Sequence[int], mask: int) -> bool:
    start = mask & -mask
    reached = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = adjacency[low.bit_length() - 1] & mask & ~reached
        reached |= fresh
        frontier |= fresh
    return reached == mask


def is_connected_induced(g: Graph, s: Iterable[int]) -> bool:
    """Return whether the subgraph of ``g`` induced by ``s`` is connected.

    A single vertex counts as connected.

    Raises:
        InputError: If ``s`` is empty or leaves the vertex set
    """
    return _mask_is_connected(g.adjacency, _check_subset(g, s))


def _extend(subset: int, candidates: int, blocked: int, adjacency: Sequence[int]) -> Iterator[int]:
    # candidates == N(subset) minus blocked; blocked == subset plus excluded vertices
    yield subset
    while candidates:
        low = candidates & -candidates
        candidates ^= low
        yield from _extend(
            subset | low,
            (candidates | adjacency[low.bit_length() - 1]) & ~(blocked | low),
            blocked | low,
            adjacency,
        )
        blocked |= low


def iter_connected_masks(g: Graph) -> Iterator[int]:
    """Yield every connected vertex subset exactly once, as a bitmask.

    Each subset is grown from its smallest vertex through the neighbour
    frontier; vertices already branched on are excluded from later branches.
    """
    adjacency = g.adjacency
    for root in range(g.vertex_count):
        root_bit = 1 << root
        blocked = (root_bit << 1) - 1
        yield from _extend(root_bit, adjacency[root] & ~blocked, blocked, adjacency)


def enumerate_connected_subsets(g: Graph, config: Optional[ConfigModel] = None) -> List[FrozenSet[int]]:
    """Return all nonempty vertex sets inducing a connected subgraph.

    The result is duplicate-free and in canonical order (size, then labels).

    Raises:
        ResourceLimitError: If the graph exceeds ``config.max_enum`` vertices
    """
    config = config or DEFAULT_CONFIG
    if g.vertex_count > config.max_enum:
        raise ResourceLimitError(
            f"Materializing connected subsets is capped at {config.max_enum} vertices, "
            f"graph has {g.vertex_count}"
        )
    masks = sorted(iter_connected_masks(g), key=canonical_key)
    logger.debug(f"Enumerated {len(masks)} connected induced subgraphs on {g.vertex_count} vertices")
    return [frozenset(labels_of(mask)) for mask in masks]


def count_connected(g: Graph, config: Optional[ConfigModel] = None) -> Tuple[KVector, int]:
    """Count connected induced subgraphs per vertex without storing them.

    Returns:
        Tuple of (k vector, total number of connected induced subgraphs)

    Raises:
        ResourceLimitError: If the graph exceeds ``config.max_count`` vertices
    """
    config = config or DEFAULT_CONFIG
    if g.vertex_count > config.max_count:
        raise ResourceLimitError(
            f"Counting connected subsets is capped at {config.max_count} vertices, "
            f"graph has {g.vertex_count}"
        )
    counts = [0] * g.vertex_count
    total = 0
    for mask in iter_connected_masks(g):
        total += 1
        index = 0
        while mask:
            if mask & 1:
                counts[index] += 1
            mask >>= 1
            index += 1
    return KVector(tuple(counts)), total


def count_k(g: Graph, config: Optional[ConfigModel] = None) -> KVector:
    """k_i = number of connected induced subgraphs containing vertex i."""
    return count_connected(g, config)[0]


def connected_components(g: Graph) -> List[Tuple[int, ...]]:
    """Partition [n+1] into maximal connected vertex sets, ordered by smallest label."""
    components = [tuple(sorted(c)) for c in nx.connected_components(g.to_networkx())]
    return sorted(components)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """Induced subgraph on ``s`` relabeled onto [|s|] in increasing label order.

    Returns:
        Tuple of (subgraph, original label of each new label)
    """
    labels = labels_of(_check_subset(g, s))
    index: Dict[int, int] = {old: new for new, old in enumerate(labels, start=1)}
    edges = [(index[i], index[j]) for i, j in g.edges if i in index and j in index]
    return Graph.from_edges(len(labels), edges), labels
