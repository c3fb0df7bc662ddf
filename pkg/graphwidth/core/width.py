"""Gromov width of graph-associahedron manifolds and the certificates backing it.

The width itself comes from the closed formula ``min{k_i > 1} - 1``. Every
certificate below rebuilds its claim from the H-representation (and, when
geometry is enabled, from enumerated vertices) and raises
:class:`InternalInconsistencyError` if the claim does not hold.
"""

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, permutations
from typing import List, Optional, Sequence, Tuple

from graphwidth.core.building_set import (
    BuildingSet,
    ComponentPiece,
    from_graph,
    has_full_ground,
    member_counts,
    product_decomposition,
    restriction_sizes,
)
from graphwidth.core.errors import (
    DimensionError,
    InputError,
    InternalInconsistencyError,
    ResourceLimitError,
)
from graphwidth.core.graph import (
    Graph,
    KVector,
    bit,
    connected_components,
    count_connected,
    count_k,
    full_mask,
    is_connected_induced,
    transposition,
)
from graphwidth.core.polytope import (
    EQ,
    GE,
    LE,
    HalfspaceSystem,
    Polytope,
    check_irredundant,
    check_oracle_agreement,
    check_support_function,
    chord_interval,
    contains_segment,
    delzant_check,
    edges,
    enumerate_vertices_bruteforce,
    hrep,
    lift_point,
    nestohedron,
    permutohedron_hrep,
    project,
    random_directions,
    verify_edge_directions,
)
from graphwidth.models import ConfigModel
from graphwidth.utils.rational import Vector, dot, primitive_vector, to_fraction

logger = logging.getLogger("graph-width")

DEFAULT_CONFIG = ConfigModel()

UNIT_PAIRINGS = (-1, 0, 1)


@dataclass(frozen=True)
class ComponentWidth:
    labels: Tuple[int, ...]
    width: int
    pivot_vertex: int


@dataclass(frozen=True)
class WidthResult:
    """Formula value with the data it was computed from.

    ``total`` is |B(G)|; ``pivot_vertex`` is None exactly when the width is 0.
    """

    width: int
    pivot_vertex: Optional[int]
    k: KVector
    total: int
    component_widths: Tuple[ComponentWidth, ...]


@dataclass(frozen=True)
class Segment:
    start: Vector
    end: Vector
    primitive_direction: Tuple[int, ...]
    affine_length: Fraction


@dataclass(frozen=True)
class DiamondCertificate:
    """n segments through ``center``, each of affine length ``rho``.

    Coordinates are projected ones: coordinate ``i`` is the original vertex
    ``coordinate_labels[i - 1]`` and ``eliminated_vertex`` was substituted out.
    """

    rho: Fraction
    center: Vector
    a: Fraction
    segments: Tuple[Segment, ...]
    containment_checked: bool
    coordinate_labels: Tuple[int, ...]
    eliminated_vertex: int


@dataclass(frozen=True)
class ParallelFacetCertificate:
    """``mu <= <u, x> <= lam`` on the polytope with ``u`` pairing to {0, +-1} on all edges."""

    u: Tuple[int, ...]
    lam: Fraction
    mu: Fraction
    edge_pairings_ok: bool
    bound: Fraction
    support_attained: bool
    verified_by: str
    coordinate_labels: Tuple[int, ...]
    eliminated_vertex: int


@dataclass(frozen=True)
class NestohedronBoundReport:
    formula_value: int
    best_upper: Optional[Fraction]
    best_u: Optional[Tuple[int, ...]]
    lower_found: Fraction
    lower_center: Vector
    lower_eliminated_vertex: int
    formula_tight: bool


@dataclass(frozen=True)
class MonotonicityResult:
    width_g: int
    width_h: int
    strict_expected: bool
    strict: bool
    holds: bool


@dataclass(frozen=True)
class NonsqueezingReport:
    width_g: int
    width_h: int
    k: int
    m: int
    obstructed: bool
    statement: str


@dataclass(frozen=True)
class PermutohedronResult:
    c: Tuple[Fraction, ...]
    width: Fraction
    lower: Optional[DiamondCertificate]
    upper: Optional[ParallelFacetCertificate]


@dataclass(frozen=True)
class GeometryVerdicts:
    dimension: int
    vertex_count: int
    edge_count: int
    lattice_vertices: bool
    edge_directions: bool
    delzant: bool
    irredundant: bool
    oracle_agreement: bool
    support_function: bool
    directions_checked: int

    @property
    def passed(self) -> bool:
        return all((
            self.lattice_vertices,
            self.edge_directions,
            self.delzant,
            self.irredundant,
            self.oracle_agreement,
            self.support_function,
        ))


@dataclass(frozen=True)
class ComponentCertificate:
    labels: Tuple[int, ...]
    width: int
    pivot_vertex: int
    lower: DiamondCertificate
    upper: ParallelFacetCertificate
    k_inequality: bool
    f_monotonic: bool
    parallel_facets: bool
    geometry: Optional[GeometryVerdicts]
    geometry_skipped: Optional[str]


@dataclass(frozen=True)
class WidthReport:
    result: WidthResult
    components: Tuple[ComponentCertificate, ...]


@dataclass(frozen=True)
class _PivotFrame:
    k: KVector
    total: int
    pivot: int
    graph: Graph
    coordinate_labels: Tuple[int, ...]


def _is_connected(g: Graph) -> bool:
    return is_connected_induced(g, range(1, g.vertex_count + 1))


def _require_connected(g: Graph, operation: str) -> None:
    if g.vertex_count < 2 or not _is_connected(g):
        raise InputError(f"{operation} needs a connected graph with at least two vertices")


def _pivot_frame(g: Graph, config: ConfigModel, operation: str) -> _PivotFrame:
    """Relabel ``g`` so that its pivot becomes the last vertex n+1."""
    _require_connected(g, operation)
    k, total = count_connected(g, config)
    pivot = k.pivot()
    size = g.vertex_count
    permutation = transposition(size, pivot, size)
    labels = tuple(permutation[i - 1] for i in range(1, size))
    logger.debug(f"{operation}: pivot {pivot} with k = {k.at(pivot)}, |B| = {total}")
    return _PivotFrame(k, total, pivot, g.relabel(permutation), labels)


def _try_vertices(h: HalfspaceSystem, config: ConfigModel) -> Optional[Polytope]:
    if not config.geometry:
        return None
    try:
        return enumerate_vertices_bruteforce(h, config)
    except ResourceLimitError as e:
        logger.warning(f"Falling back to facet data: {e.message}")
        return None


def _pairs_with_roots(u: Sequence[int]) -> bool:
    # projected edge directions are +-e_j or e_j - e_k
    if any(x not in UNIT_PAIRINGS for x in u):
        return False
    return all(x - y in UNIT_PAIRINGS for x, y in combinations(u, 2))


def _has_facet(h: HalfspaceSystem, label: int, coefficients: Tuple[int, ...], sense: str, rhs: Fraction) -> bool:
    return any(
        c.label == label and c.coefficients == coefficients and c.sense == sense and c.rhs == rhs
        for c in h.constraints
    )


def gromov_width(g: Graph, config: Optional[ConfigModel] = None) -> WidthResult:
    """Width ``min{k_i > 1} - 1`` of the toric manifold of ``g``, 0 when every k_i is 1.

    Raises:
        ResourceLimitError: If counting exceeds ``config.max_count``
        InternalInconsistencyError: If the component minimum disagrees with the vertex minimum
    """
    config = config or DEFAULT_CONFIG
    k, total = count_connected(g, config)
    pivot = k.pivot()
    width = k.at(pivot) - 1 if pivot is not None else 0
    components = []
    for labels in connected_components(g):
        if len(labels) < 2:
            continue
        local = min(k.at(v) for v in labels)
        local_pivot = min(v for v in labels if k.at(v) == local)
        components.append(ComponentWidth(labels, local - 1, local_pivot))
    if min((c.width for c in components), default=0) != width:
        raise InternalInconsistencyError(
            f"Width {width} differs from the minimum over components {[c.width for c in components]}"
        )
    return WidthResult(width, pivot, k, total, tuple(components))


def _segments_through(center: Sequence[Fraction], low: Fraction, high: Fraction) -> List[Segment]:
    segments = []
    for i in range(len(center)):
        start = list(center)
        end = list(center)
        start[i], end[i] = low, high
        direction, length = primitive_vector([y - x for x, y in zip(start, end)])
        segments.append(Segment(tuple(start), tuple(end), direction, length))
    return segments


def _verified_diamond(
    h: HalfspaceSystem,
    a: Fraction,
    low: Fraction,
    high: Fraction,
    coordinate_labels: Tuple[int, ...],
    eliminated_vertex: int,
) -> DiamondCertificate:
    n = h.dimension
    if not (low <= a <= high):
        raise InternalInconsistencyError(f"Center coordinate {a} is outside [{low}, {high}]")
    rho = high - low
    center = (a,) * n
    segments = _segments_through(center, low, high)
    for segment in segments:
        if not contains_segment(h, segment.start, segment.end):
            raise InternalInconsistencyError(
                f"Segment from {[str(x) for x in segment.start]} to {[str(x) for x in segment.end]} leaves the polytope"
            )
        if segment.affine_length != rho:
            raise InternalInconsistencyError(f"Segment has affine length {segment.affine_length}, expected {rho}")
    return DiamondCertificate(rho, center, a, tuple(segments), True, coordinate_labels, eliminated_vertex)


def lower_certificate(g: Graph, config: Optional[ConfigModel] = None) -> DiamondCertificate:
    """Diamond of size k_pivot - 1 inside the projected graph associahedron.

    With the pivot relabeled to n+1, segment ``L_i`` runs along coordinate i
    from 1 to k_pivot while every other coordinate equals
    ``a = (|B| - k_pivot - 1) / (n - 1)``. For n = 1 the certificate is the
    interval [1, k_pivot] itself, centered at its midpoint.

    Raises:
        InputError: If ``g`` is not connected or has a single vertex
        InternalInconsistencyError: If a segment is not contained in the polytope
    """
    config = config or DEFAULT_CONFIG
    frame = _pivot_frame(g, config, "lower_certificate")
    b = from_graph(frame.graph, config)
    h = project(hrep(b))
    top = Fraction(frame.k.at(frame.pivot))
    n = g.vertex_count - 1
    if n == 1:
        a = (1 + top) / 2
    else:
        a = Fraction(len(b) - frame.k.at(frame.pivot) - 1, n - 1)
    logger.debug(f"Diamond center coordinate a = {a}")
    return _verified_diamond(h, a, Fraction(1), top, frame.coordinate_labels, frame.pivot)


def _verified_support(
    h: HalfspaceSystem,
    u: Tuple[int, ...],
    lam: Fraction,
    mu: Fraction,
    polytope: Optional[Polytope],
    coordinate_labels: Tuple[int, ...],
    eliminated_vertex: int,
) -> ParallelFacetCertificate:
    if polytope is not None:
        pairings_ok = all(dot(u, edge.primitive_direction) in UNIT_PAIRINGS for edge in edges(polytope))
        values = [dot(u, v) for v in polytope.vertices]
        attained = max(values) == lam and min(values) == mu
        verified_by = "vertices"
    else:
        pairings_ok = _pairs_with_roots(u)
        attained = True
        verified_by = "facets"
    if not pairings_ok:
        raise InternalInconsistencyError(f"Direction {u} pairs outside {{0, +-1}} with some edge")
    if not attained:
        raise InternalInconsistencyError(f"<{u}, x> is not supported at {lam} and {mu}")
    return ParallelFacetCertificate(
        u, lam, mu, pairings_ok, lam - mu, attained, verified_by, coordinate_labels, eliminated_vertex
    )


def upper_certificate(g: Graph, config: Optional[ConfigModel] = None) -> ParallelFacetCertificate:
    """Parallel supporting hyperplanes ``sum x_i = |B| - 1`` and ``sum x_i = |B| - k_pivot``.

    They come from the facets {n+1} and [n]; the support values are checked
    on enumerated vertices when geometry is enabled and on facet data
    otherwise.

    Raises:
        InputError: If ``g`` is not connected or has a single vertex
        InternalInconsistencyError: If a facet is missing, a pairing fails or a bound is not attained
    """
    config = config or DEFAULT_CONFIG
    frame = _pivot_frame(g, config, "upper_certificate")
    b = from_graph(frame.graph, config)
    h = project(hrep(b))
    n = g.vertex_count - 1
    u = (1,) * n
    lam = Fraction(len(b) - 1)
    mu = Fraction(len(b) - frame.k.at(frame.pivot))
    if not _has_facet(h, bit(n + 1), u, LE, lam):
        raise InternalInconsistencyError(f"Facet {{{n + 1}}} does not read sum x_i <= {lam}")
    if not _has_facet(h, full_mask(n), u, GE, mu):
        raise InternalInconsistencyError(f"Facet [1..{n}] is missing or does not read sum x_i >= {mu}")
    certificate = _verified_support(
        h, u, lam, mu, _try_vertices(h, config), frame.coordinate_labels, frame.pivot
    )
    logger.debug(f"Upper bound {certificate.bound} verified by {certificate.verified_by}")
    return certificate


def check_parallel_facets_exist(
    g: Graph, pivot: Optional[int] = None, config: Optional[ConfigModel] = None
) -> bool:
    """Whether removing ``pivot`` (default: the minimal-k pivot) leaves ``g`` connected.

    A False answer for a minimizer of k would contradict the theory and
    raises; a forced non-minimal pivot may legitimately return False.

    Raises:
        InputError: If ``g`` is not connected or the pivot is not a vertex
        InternalInconsistencyError: If a minimizer of k disconnects the graph
    """
    _require_connected(g, "check_parallel_facets_exist")
    k = count_k(g, config or DEFAULT_CONFIG)
    chosen = k.pivot() if pivot is None else pivot
    if not (1 <= chosen <= g.vertex_count):
        raise InputError(f"Pivot {chosen} is not a vertex of the graph")
    rest = [v for v in range(1, g.vertex_count + 1) if v != chosen]
    result = is_connected_induced(g, rest)
    if not result and k.is_minimizer(chosen):
        raise InternalInconsistencyError(f"Removing the minimal-k vertex {chosen} disconnects the graph")
    return result


def check_k_inequality(g: Graph, config: Optional[ConfigModel] = None) -> bool:
    """``n * k_i >= |B| - 1`` for every vertex."""
    _require_connected(g, "check_k_inequality")
    k, total = count_connected(g, config or DEFAULT_CONFIG)
    n = g.vertex_count - 1
    failures = [label for label, value in enumerate(k, start=1) if n * value < total - 1]
    if failures:
        logger.debug(f"k inequality fails at vertices {failures}")
    return not failures


def check_f_monotonic(b: BuildingSet, pivot: Optional[int] = None) -> bool:
    """``f(I) = (|B|_I| - 1) / (|I| - 1)`` grows along one-element extensions in ``b``.

    Also checks ``(|B| - k_pivot - 1) / (n - 1) >= f(I)`` for every member
    ``I`` other than the ground set, with k counted as member multiplicity.

    Raises:
        DimensionError: If the full ground set is not a member
    """
    if not has_full_ground(b):
        raise DimensionError(f"Full ground set [1..{b.ground_size}] is not a member")
    sizes = restriction_sizes(b)

    def f(mask: int) -> Fraction:
        return Fraction(sizes[mask] - 1, bin(mask).count("1") - 1)

    for mask in b.members:
        if bin(mask).count("1") < 2:
            continue
        for label in range(1, b.ground_size + 1):
            grown = mask | bit(label)
            if grown != mask and grown in b.member_set and f(grown) < f(mask):
                logger.debug(f"f drops from {f(mask)} to {f(grown)} when adding {label}")
                return False

    n = b.ground_size - 1
    if n < 2:
        return True
    counts = member_counts(b)
    if pivot is None:
        k_pivot = min(k for k in counts if k > 1)
    else:
        k_pivot = counts[pivot - 1]
    bound = Fraction(len(b) - k_pivot - 1, n - 1)
    for mask in b.members:
        if mask != b.full and bin(mask).count("1") >= 2 and f(mask) > bound:
            logger.debug(f"f = {f(mask)} exceeds the center coordinate {bound}")
            return False
    return True


def subgraph_monotonicity(
    g: Graph, h: Graph, embedding: Optional[Sequence[int]] = None, config: Optional[ConfigModel] = None
) -> MonotonicityResult:
    """Compare widths of ``g`` and a subgraph ``h``; strictness is expected when ``h`` has fewer vertices.

    ``embedding[v - 1]`` is the vertex of ``g`` that vertex ``v`` of ``h``
    maps to (identity by default).

    Raises:
        InputError: If ``g`` is disconnected or ``h`` is not a subgraph
        InternalInconsistencyError: If the comparison fails
    """
    config = config or DEFAULT_CONFIG
    if not _is_connected(g):
        raise InputError("subgraph_monotonicity needs a connected graph G")
    if not h.is_subgraph_of(g, embedding):
        raise InputError("H is not a subgraph of G under the given embedding")
    width_g = gromov_width(g, config).width
    width_h = gromov_width(h, config).width
    strict_expected = h.vertex_count < g.vertex_count
    holds = width_h <= width_g and (width_h < width_g or not strict_expected)
    if not holds:
        raise InternalInconsistencyError(
            f"Width of H ({width_h}) against width of G ({width_g}) breaks monotonicity"
        )
    return MonotonicityResult(width_g, width_h, strict_expected, width_h < width_g, holds)


def nonsqueezing_report(
    g: Graph,
    h: Graph,
    m: int = 0,
    embedding: Optional[Sequence[int]] = None,
    config: Optional[ConfigModel] = None,
) -> NonsqueezingReport:
    """Non-squeezing of ``M_G x R^2m`` into ``M_H x R^2(k+m)`` with ``k = |G| - |H|``.

    Raises:
        InputError: If a graph is disconnected, ``h`` is not a proper subgraph
            with fewer vertices, or ``m`` is negative
        InternalInconsistencyError: If the widths do not separate
    """
    config = config or DEFAULT_CONFIG
    if m < 0:
        raise InputError(f"m must be nonnegative, got {m}")
    if not _is_connected(g) or not _is_connected(h):
        raise InputError("Non-squeezing needs connected graphs G and H")
    if h.vertex_count >= g.vertex_count:
        raise InputError(f"H must have fewer vertices than G ({h.vertex_count} >= {g.vertex_count})")
    if not h.is_subgraph_of(g, embedding):
        raise InputError("H is not a subgraph of G under the given embedding")
    width_g = gromov_width(g, config).width
    width_h = gromov_width(h, config).width
    k = g.vertex_count - h.vertex_count
    if width_h >= width_g:
        raise InternalInconsistencyError(f"Width of H ({width_h}) is not below width of G ({width_g})")
    statement = (
        f"w(M_G x R^{2 * m}) = w(M_G) = {width_g} > {width_h} = w(M_H) = w(M_H x R^{2 * (k + m)}); "
        f"M_G x R^{2 * m} admits no symplectic embedding into M_H x R^{2 * (k + m)}"
    )
    return NonsqueezingReport(width_g, width_h, k, m, True, statement)


def _permutation_points(values: Sequence[Fraction]) -> List[Vector]:
    return sorted(set(tuple(p[:-1]) for p in permutations(values)))


def permutohedron_width(c: Sequence, config: Optional[ConfigModel] = None) -> PermutohedronResult:
    """Width ``c_{n+1} - c_1`` of the permutohedron with vertices the permutations of ``c``.

    Raises:
        InputError: If ``c`` is empty, not rational or not strictly increasing
        InternalInconsistencyError: If a certificate fails to verify
    """
    config = config or DEFAULT_CONFIG
    try:
        values = tuple(to_fraction(x) for x in c)
    except (TypeError, ValueError) as e:
        raise InputError(f"Invalid permutohedron vector: {e}")
    if not values:
        raise InputError("Permutohedron vector must be nonempty")
    if any(later <= earlier for earlier, later in zip(values, values[1:])):
        raise InputError(f"Permutohedron vector {[str(x) for x in values]} is not strictly increasing")
    size = len(values)
    n = size - 1
    width = values[-1] - values[0]
    if n == 0:
        return PermutohedronResult(values, width, None, None)

    h = project(permutohedron_hrep(values))
    labels = tuple(range(1, size))
    if n == 1:
        a = (values[0] + values[1]) / 2
    else:
        a = sum(values[1:n], Fraction(0)) / (n - 1)
    lower = _verified_diamond(h, a, values[0], values[-1], labels, size)

    u = (1,) + (0,) * (n - 1)
    if not _has_facet(h, full_mask(size) ^ 1, u, LE, values[-1]):
        raise InternalInconsistencyError(f"Facet x_1 <= {values[-1]} is missing")
    if not _has_facet(h, 1, u, GE, values[0]):
        raise InternalInconsistencyError(f"Facet x_1 >= {values[0]} is missing")
    polytope = _try_vertices(h, config)
    if polytope is None and math.factorial(size) * len(h.constraints) <= config.max_combinations:
        points = _permutation_points(values)
        if not all(h.satisfies(point) for point in points):
            raise InternalInconsistencyError("A permutation of c violates the permutohedron inequalities")
        upper = _verified_support(h, u, values[-1], values[0], None, labels, size)
        upper = replace(
            upper,
            support_attained=max(p[0] for p in points) == values[-1] and min(p[0] for p in points) == values[0],
            verified_by="permutations",
        )
        if not upper.support_attained:
            raise InternalInconsistencyError("x_1 does not attain both c_1 and c_{n+1} on the permutations")
    else:
        upper = _verified_support(h, u, values[-1], values[0], polytope, labels, size)
    if not (lower.rho == upper.bound == width):
        raise InternalInconsistencyError(f"Bounds {lower.rho} and {upper.bound} differ from {width}")
    return PermutohedronResult(values, width, lower, upper)


def _candidate_directions(h: HalfspaceSystem) -> List[Tuple[int, ...]]:
    # u and -u give the same width, so candidates are kept sign-normalized
    found = {(1,) * h.dimension}
    for constraint in h.constraints:
        if constraint.sense == EQ or not any(constraint.coefficients):
            continue
        direction, _ = primitive_vector(constraint.coefficients)
        if all(x in UNIT_PAIRINGS for x in direction):
            found.add(direction)
    return sorted(found)


def _best_parallel_bound(h: HalfspaceSystem, p: Polytope) -> Tuple[Optional[Fraction], Optional[Tuple[int, ...]]]:
    edge_list = edges(p)
    best: Optional[Fraction] = None
    best_u: Optional[Tuple[int, ...]] = None
    for u in _candidate_directions(h):
        if any(dot(u, edge.primitive_direction) not in UNIT_PAIRINGS for edge in edge_list):
            logger.debug(f"Candidate {u} fails the edge pairing test")
            continue
        values = [dot(u, v) for v in p.vertices]
        spread = max(values) - min(values)
        logger.debug(f"Candidate {u} bounds the width by {spread}")
        if best is None or spread < best:
            best, best_u = spread, u
    return best, best_u


def _diamond_size(ambient: HalfspaceSystem, center: Vector, eliminated: int) -> Optional[Fraction]:
    """Largest rho with segments along ``e_i - e_j`` through ``center``; None if it is infeasible."""
    size = ambient.dimension
    rho: Optional[Fraction] = None
    for i in range(size):
        if i == eliminated:
            continue
        direction = [0] * size
        direction[i], direction[eliminated] = 1, -1
        interval = chord_interval(ambient, center, direction)
        if interval is None or None in interval:
            return None
        lo, hi = interval
        if lo > 0 or hi < 0:
            return None
        rho = hi - lo if rho is None else min(rho, hi - lo)
    return rho


def _max_slack(ambient: HalfspaceSystem, point: Vector) -> Fraction:
    slacks = [dot(a, point) - b for a, b in (row for row in ambient.rows if row is not None)]
    return max(slacks, default=Fraction(0))


def _line_point(size: int, eliminated: int, total: Fraction, t: Fraction) -> Vector:
    point = [t] * size
    point[eliminated] = total - (size - 1) * t
    return tuple(point)


def _diamond_search(
    b: BuildingSet, ambient: HalfspaceSystem, p: Polytope, config: ConfigModel
) -> Tuple[Fraction, Vector, int]:
    """Best diamond over the eliminated coordinate, searched on ``x_i = t`` lines and at the centroid.

    Returns:
        Tuple of (rho, ambient center, eliminated label)
    """
    size = b.ground_size
    n = size - 1
    total = ambient.total
    counts = member_counts(b)
    lifted = [lift_point(v, p.system.total) for v in p.vertices]
    centroid = tuple(sum(coords, Fraction(0)) / len(lifted) for coords in zip(*lifted))
    found: List[Tuple[Fraction, Fraction, int, Vector]] = []

    def consider(center: Vector, j: int) -> Optional[Fraction]:
        rho = _diamond_size(ambient, center, j)
        if rho is not None:
            found.append((rho, _max_slack(ambient, center), j, center))
        return rho

    for j in range(size):
        consider(centroid, j)
        if n >= 2:
            consider(_line_point(size, j, total, Fraction(len(b) - counts[j] - 1, n - 1)), j)
        diagonal = [1] * size
        diagonal[j] = -n
        interval = chord_interval(ambient, _line_point(size, j, total, Fraction(0)), diagonal)
        if interval is None or None in interval:
            continue
        lo, hi = interval
        for _ in range(config.diamond_search_steps):
            first = lo + (hi - lo) / 3
            second = hi - (hi - lo) / 3
            left = consider(_line_point(size, j, total, first), j)
            right = consider(_line_point(size, j, total, second), j)
            if left is None or right is None:
                break
            if left < right:
                lo = first
            else:
                hi = second
    if not found:
        raise InternalInconsistencyError("No feasible diamond center found")
    rho, _, j, center = min(found, key=lambda item: (-item[0], item[1], item[2], item[3]))
    return rho, center, j + 1


def nestohedron_bounds(b: BuildingSet, config: Optional[ConfigModel] = None) -> NestohedronBoundReport:
    """Bounds on the width of a general nestohedron next to the graph formula.

    The upper bound takes the best 0/+-1 direction from facet normals (plus
    the all-ones vector) that passes the edge pairing test. The lower bound
    is the largest diamond found by a search, not the width itself.

    Raises:
        DimensionError: If the full ground set is not a member
        ResourceLimitError: If vertex enumeration exceeds its caps
        InternalInconsistencyError: If the found lower bound exceeds the upper bound
    """
    config = config or DEFAULT_CONFIG
    if not has_full_ground(b):
        raise DimensionError(f"Full ground set [1..{b.ground_size}] is not a member")
    counts = member_counts(b)
    nontrivial = [k for k in counts if k > 1]
    formula = min(nontrivial) - 1 if nontrivial else 0
    if b.ground_size == 1:
        return NestohedronBoundReport(formula, Fraction(0), (), Fraction(0), (Fraction(len(b)),), 1, True)

    ambient = hrep(b)
    h = project(ambient)
    p = enumerate_vertices_bruteforce(h, config)
    best_upper, best_u = _best_parallel_bound(h, p)
    lower, center, eliminated = _diamond_search(b, ambient, p, config)
    if best_upper is not None and lower > best_upper:
        raise InternalInconsistencyError(f"Diamond of size {lower} exceeds the upper bound {best_upper}")
    tight = best_upper is not None and best_upper == formula == lower
    if tight:
        logger.info(f"Nestohedron width {formula} matches the formula")
    else:
        logger.warning(
            f"Formula value {formula} is not confirmed: upper bound {best_upper}, lower bound found {lower}"
        )
    return NestohedronBoundReport(formula, best_upper, best_u, lower, center, eliminated, tight)


def geometry_verdicts(b: BuildingSet, config: Optional[ConfigModel] = None) -> GeometryVerdicts:
    """Run every polyhedral check on P_B.

    Raises:
        ResourceLimitError: If vertex enumeration exceeds its caps
        SimplicityError: If the polytope is not simple
    """
    config = config or DEFAULT_CONFIG
    h, p = nestohedron(b, config)
    edge_list = edges(p)
    directions = random_directions(b.ground_size, config.random_directions, config.seed)
    verdicts = GeometryVerdicts(
        dimension=p.dimension,
        vertex_count=len(p.vertices),
        edge_count=len(edge_list),
        lattice_vertices=all(x.denominator == 1 for v in p.vertices for x in v),
        edge_directions=verify_edge_directions(p, edge_list),
        delzant=delzant_check(p, h),
        irredundant=check_irredundant(p, h),
        oracle_agreement=check_oracle_agreement(b, p),
        support_function=check_support_function(b, p, directions),
        directions_checked=len(directions),
    )
    logger.info(
        f"P_B of dimension {verdicts.dimension}: {verdicts.vertex_count} vertices, "
        f"{verdicts.edge_count} edges, checks {'passed' if verdicts.passed else 'FAILED'}"
    )
    return verdicts


def _in_original_labels(certificate, labels: Tuple[int, ...]):
    return replace(
        certificate,
        coordinate_labels=tuple(labels[v - 1] for v in certificate.coordinate_labels),
        eliminated_vertex=labels[certificate.eliminated_vertex - 1],
    )


def _certify_component(piece: ComponentPiece, config: ConfigModel) -> ComponentCertificate:
    g = piece.graph
    result = gromov_width(g, config)
    lower = lower_certificate(g, config)
    upper = upper_certificate(g, config)
    if not (lower.rho == upper.bound == result.width):
        raise InternalInconsistencyError(
            f"Component {piece.labels}: diamond {lower.rho}, upper bound {upper.bound}, formula {result.width}"
        )
    k_inequality = check_k_inequality(g, config)
    f_monotonic = check_f_monotonic(piece.building_set)
    parallel_facets = check_parallel_facets_exist(g, config=config)
    if not (k_inequality and f_monotonic and parallel_facets):
        raise InternalInconsistencyError(
            f"Component {piece.labels}: k inequality {k_inequality}, f monotonic {f_monotonic}, "
            f"parallel facets {parallel_facets}"
        )

    geometry, skipped = None, None
    if not config.geometry:
        skipped = "geometry disabled"
    elif g.vertex_count - 1 > config.max_dim:
        skipped = f"dimension {g.vertex_count - 1} exceeds max_dim {config.max_dim}"
    else:
        try:
            geometry = geometry_verdicts(piece.building_set, config)
        except ResourceLimitError as e:
            skipped = e.message
        if geometry is not None and not geometry.passed:
            raise InternalInconsistencyError(f"Component {piece.labels}: polytope checks failed: {geometry}")
    if skipped:
        logger.warning(f"Component {piece.labels}: geometry skipped ({skipped})")

    return ComponentCertificate(
        labels=piece.labels,
        width=result.width,
        pivot_vertex=piece.labels[result.pivot_vertex - 1],
        lower=_in_original_labels(lower, piece.labels),
        upper=_in_original_labels(upper, piece.labels),
        k_inequality=k_inequality,
        f_monotonic=f_monotonic,
        parallel_facets=parallel_facets,
        geometry=geometry,
        geometry_skipped=skipped,
    )


def certify(g: Graph, config: Optional[ConfigModel] = None) -> WidthReport:
    """Formula width with certificates for every component that has an edge.

    Raises:
        ResourceLimitError: If enumeration exceeds its caps
        InternalInconsistencyError: If any certificate or structural check fails
    """
    config = config or DEFAULT_CONFIG
    result = gromov_width(g, config)
    components = tuple(
        _certify_component(piece, config)
        for piece in product_decomposition(g, config)
        if piece.graph.vertex_count >= 2
    )
    certified = min((c.width for c in components), default=0)
    if certified != result.width:
        raise InternalInconsistencyError(f"Certified width {certified} differs from formula width {result.width}")
    logger.info(f"Certified width {result.width} over {len(components)} component(s)")
    return WidthReport(result, components)
