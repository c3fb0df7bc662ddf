"""Building sets on [n+1], graphical or user supplied."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from graphwidth.core.errors import InternalInconsistencyError, StructureError
from graphwidth.core.graph import (
    Graph,
    canonical_key,
    connected_components,
    enumerate_connected_subsets,
    full_mask,
    induced_subgraph,
    labels_of,
    mask_of,
)
from graphwidth.models import ConfigModel

logger = logging.getLogger("graph-width")


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(label) for label in labels_of(mask)) + "}"


@dataclass(frozen=True)
class BuildingSet:
    """A collection of nonempty subsets of [ground_size] stored as bitmasks.

    Members are kept in canonical order (cardinality, then lexicographic),
    so every report derived from them is stable. The building-set axioms are
    not enforced here; see :func:`validate`.
    """

    ground_size: int
    members: Tuple[int, ...]

    @classmethod
    def from_members(cls, ground_size: int, members: Iterable[Iterable[int]]) -> "BuildingSet":
        """Build from label collections, dropping repeats.

        Raises:
            StructureError: If a member is empty or leaves [ground_size]
        """
        if ground_size < 1:
            raise StructureError(f"Ground set size must be positive, got {ground_size}")
        masks = set()
        for member in members:
            labels = set(member)
            if not labels:
                raise StructureError("Building-set members must be nonempty")
            outside = sorted(v for v in labels if not (1 <= v <= ground_size))
            if outside:
                raise StructureError(f"Member {sorted(labels)} has elements {outside} outside [1..{ground_size}]")
            masks.add(mask_of(labels))
        return cls(ground_size, tuple(sorted(masks, key=canonical_key)))

    @cached_property
    def member_set(self) -> FrozenSet[int]:
        return frozenset(self.members)

    @property
    def full(self) -> int:
        return full_mask(self.ground_size)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, labels: Iterable[int]) -> bool:
        return mask_of(labels) in self.member_set

    def member_labels(self) -> List[Tuple[int, ...]]:
        return [labels_of(mask) for mask in self.members]


@dataclass(frozen=True)
class RestrictedBuildingSet:
    """Members of ``base`` contained in ``window``."""

    base: BuildingSet
    window: int
    members: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    missing_singletons: Tuple[int, ...] = ()
    unclosed_pairs: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...] = ()

    @property
    def violations(self) -> List[str]:
        messages = [f"missing singleton {{{label}}}" for label in self.missing_singletons]
        messages.extend(
            f"{format_subset(mask_of(i))} and {format_subset(mask_of(j))} intersect "
            f"but their union {format_subset(mask_of(i) | mask_of(j))} is absent"
            for i, j in self.unclosed_pairs
        )
        return messages


def validate(b: BuildingSet) -> ValidationResult:
    """Check the singleton and union-closure axioms.

    Returns:
        ValidationResult listing each missing singleton and each
        intersecting pair whose union is not a member
    """
    missing = tuple(label for label in range(1, b.ground_size + 1) if (1 << (label - 1)) not in b.member_set)
    unclosed = []
    members = b.members
    for position, first in enumerate(members):
        for second in members[position + 1:]:
            if first & second and (first | second) not in b.member_set:
                unclosed.append((labels_of(first), labels_of(second)))
    result = ValidationResult(not missing and not unclosed, missing, tuple(unclosed))
    if not result.valid:
        logger.debug(f"Building set on {b.ground_size} elements has {len(result.violations)} violations")
    return result


def from_graph(g: Graph, config: Optional[ConfigModel] = None) -> BuildingSet:
    """Graphical building set B(G): the connected induced subgraphs of ``g``."""
    subsets = enumerate_connected_subsets(g, config)
    return BuildingSet(g.vertex_count, tuple(mask_of(s) for s in subsets))


def restrict(b: BuildingSet, window: Iterable[int]) -> RestrictedBuildingSet:
    """B|_I: the members contained in ``window``.

    Raises:
        StructureError: If the window is empty or leaves the ground set
    """
    labels = set(window)
    if not labels or any(not (1 <= v <= b.ground_size) for v in labels):
        raise StructureError(f"Window {sorted(labels)} is not a nonempty subset of [1..{b.ground_size}]")
    window_mask = mask_of(labels)
    members = tuple(mask for mask in b.members if mask & ~window_mask == 0)
    return RestrictedBuildingSet(b, window_mask, members)


def has_full_ground(b: BuildingSet) -> bool:
    return b.full in b.member_set


def member_counts(b: BuildingSet) -> Tuple[int, ...]:
    """Number of members containing each element (k_i for general building sets)."""
    counts = [0] * b.ground_size
    for mask in b.members:
        for label in labels_of(mask):
            counts[label - 1] += 1
    return tuple(counts)


def restriction_sizes(b: BuildingSet) -> Dict[int, int]:
    """|B|_I| for every member I, by walking the submasks of I."""
    sizes = {}
    for mask in b.members:
        count = 0
        sub = mask
        while sub:
            if sub in b.member_set:
                count += 1
            sub = (sub - 1) & mask
        sizes[mask] = count
    return sizes


@dataclass(frozen=True)
class ComponentPiece:
    labels: Tuple[int, ...]
    graph: Graph
    building_set: BuildingSet


def product_decomposition(g: Graph, config: Optional[ConfigModel] = None) -> List[ComponentPiece]:
    """Split B(G) along the connected components of ``g``.

    Each component is relabeled onto [|component|]. The member counts must
    add up, since no connected subgraph crosses components.

    Raises:
        InternalInconsistencyError: If the member counts do not add up
    """
    pieces = []
    for component in connected_components(g):
        sub, labels = induced_subgraph(g, component)
        pieces.append(ComponentPiece(labels, sub, from_graph(sub, config)))
    whole = from_graph(g, config)
    if len(whole) != sum(len(piece.building_set) for piece in pieces):
        raise InternalInconsistencyError(
            f"|B(G)| = {len(whole)} differs from the sum over components "
            f"{[len(piece.building_set) for piece in pieces]}"
        )
    return pieces
