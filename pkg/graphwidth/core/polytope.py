"""Exact H-representations of nestohedra and the polyhedral checks run on them.

All arithmetic is exact; nothing in this module touches floating point.
"""

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import sympy

from graphwidth.core.building_set import (
    BuildingSet,
    format_subset,
    has_full_ground,
    restriction_sizes,
    validate,
)
from graphwidth.core.errors import (
    DimensionError,
    InputError,
    ResourceLimitError,
    SimplicityError,
    StructureError,
    UnboundedError,
)
from graphwidth.core.graph import full_mask
from graphwidth.models import ConfigModel
from graphwidth.utils.rational import Vector, dot, null_vector, primitive_vector, solve

logger = logging.getLogger("graph-width")

DEFAULT_CONFIG = ConfigModel()

GE, LE, EQ = ">=", "<=", "="


@dataclass(frozen=True)
class Constraint:
    """``coefficients . x  (sense)  rhs``, labelled by a subset bitmask when it has one."""

    label: Optional[int]
    coefficients: Tuple[int, ...]
    rhs: Fraction
    sense: str

    def normalized(self) -> Tuple[Tuple[int, ...], Fraction]:
        """The constraint as ``a . x >= b`` (equalities keep their own orientation)."""
        if self.sense == LE:
            return tuple(-a for a in self.coefficients), -self.rhs
        return self.coefficients, self.rhs

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return dot(self.coefficients, point)

    def holds(self, point: Sequence[Fraction]) -> bool:
        value = self.value(point)
        if self.sense == GE:
            return value >= self.rhs
        if self.sense == LE:
            return value <= self.rhs
        return value == self.rhs

    def is_tight(self, point: Sequence[Fraction]) -> bool:
        return self.value(point) == self.rhs

    def name(self) -> str:
        if self.sense == EQ:
            return "total"
        return format_subset(self.label) if self.label is not None else "unlabelled"


@dataclass(frozen=True)
class HalfspaceSystem:
    """A list of linear constraints in ``dimension`` variables.

    ``total`` is the right-hand side of the ambient equality and is kept on
    projected systems so points can be lifted back.
    """

    dimension: int
    constraints: Tuple[Constraint, ...]
    total: Optional[Fraction] = None

    @property
    def equalities(self) -> List[Constraint]:
        return [c for c in self.constraints if c.sense == EQ]

    @cached_property
    def rows(self) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
        """Inequalities in ``a . x >= b`` form, aligned with ``constraints`` (None for equalities)."""
        return tuple(c.normalized() if c.sense != EQ else None for c in self.constraints)

    def satisfies(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.dimension:
            raise InputError(f"Point of dimension {len(point)} checked against a {self.dimension}-dimensional system")
        return all(c.holds(point) for c in self.constraints)


@dataclass(frozen=True)
class Polytope:
    """Vertices of a bounded system with the indices of the constraints tight at each."""

    dimension: int
    vertices: Tuple[Vector, ...]
    vertex_facets: Tuple[FrozenSet[int], ...]
    system: HalfspaceSystem

    def facet_labels(self, index: int) -> FrozenSet[Optional[int]]:
        return frozenset(self.system.constraints[c].label for c in self.vertex_facets[index])


@dataclass(frozen=True)
class EdgeDescriptor:
    """An edge ``end - start = affine_length * primitive_direction``."""

    endpoints: Tuple[int, int]
    primitive_direction: Tuple[int, ...]
    affine_length: Fraction


def hrep(b: BuildingSet) -> HalfspaceSystem:
    """Ambient H-representation of the nestohedron P_B.

    One equality ``sum x_i = |B|`` plus ``sum_{i in I} x_i >= |B|_I|`` for
    every member ``I`` other than the full ground set.

    Raises:
        DimensionError: If the full ground set is not a member
        StructureError: If ``b`` violates a building-set axiom
    """
    if not has_full_ground(b):
        raise DimensionError(f"Full ground set [1..{b.ground_size}] is not a member; P_B is not full-dimensional")
    result = validate(b)
    if not result.valid:
        raise StructureError("Not a building set: " + "; ".join(result.violations))
    sizes = restriction_sizes(b)
    size = b.ground_size
    total = Fraction(len(b))
    constraints = [Constraint(b.full, (1,) * size, total, EQ)]
    for mask in b.members:
        if mask == b.full:
            continue
        coefficients = tuple(1 if mask >> i & 1 else 0 for i in range(size))
        constraints.append(Constraint(mask, coefficients, Fraction(sizes[mask]), GE))
    return HalfspaceSystem(size, tuple(constraints), total)


def project(h: HalfspaceSystem) -> HalfspaceSystem:
    """Eliminate the last coordinate through the equality ``sum x_i = total``.

    ``x_{n+1} = total - sum_{i<=n} x_i`` is substituted everywhere; the map
    sends the lattice points of the hyperplane onto Z^n. Rows whose
    coefficients all become non-positive are flipped to ``<=`` form.

    Raises:
        DimensionError: If the system does not have exactly one all-ones equality
    """
    equalities = h.equalities
    if len(equalities) != 1 or any(a != 1 for a in equalities[0].coefficients):
        raise DimensionError("Projection needs exactly one equality of the form sum x_i = total")
    total = equalities[0].rhs
    constraints = []
    for constraint in h.constraints:
        if constraint.sense == EQ:
            continue
        last = constraint.coefficients[-1]
        coefficients = tuple(a - last for a in constraint.coefficients[:-1])
        rhs = constraint.rhs - last * total
        sense = constraint.sense
        if all(a == 0 for a in coefficients):
            if not Constraint(None, (), rhs, sense).holds(()):
                raise InputError(f"Constraint {constraint.name()} is infeasible on the hyperplane")
            logger.debug(f"Dropping constraint {constraint.name()}, constant after projection")
            continue
        if all(a <= 0 for a in coefficients):
            coefficients = tuple(-a for a in coefficients)
            rhs = -rhs
            sense = LE if sense == GE else GE
        constraints.append(Constraint(constraint.label, coefficients, rhs, sense))
    return HalfspaceSystem(h.dimension - 1, tuple(constraints), total)


def lift_point(point: Sequence[Fraction], total: Fraction) -> Vector:
    """Inverse of the projection: append ``total - sum(point)``."""
    return tuple(Fraction(x) for x in point) + (Fraction(total) - sum(point, Fraction(0)),)


def _find_recession_direction(h: HalfspaceSystem) -> Optional[Vector]:
    # Extreme rays of the pointed cone {d : A d >= 0} have n - 1 independent tight rows
    rows = [row for row in h.rows if row is not None]
    n = h.dimension
    for subset in combinations(range(len(rows)), n - 1):
        direction = null_vector([rows[i][0] for i in subset], n)
        if direction is None:
            continue
        pairings = [dot(a, direction) for a, _ in rows]
        if all(p >= 0 for p in pairings):
            return direction
        if all(p <= 0 for p in pairings):
            return tuple(-x for x in direction)
    return None


def enumerate_vertices_bruteforce(h: HalfspaceSystem, config: Optional[ConfigModel] = None) -> Polytope:
    """Vertices of a projected system by solving every n-subset of boundaries.

    A candidate is kept iff it satisfies every constraint; duplicates are
    merged exactly. This is the independent oracle for the nested-set
    description and is exponential in the number of constraints.

    Raises:
        DimensionError: If the system still has an equality
        ResourceLimitError: If the dimension or the subset count exceeds its cap
        UnboundedError: If a recession direction exists
        InputError: If the system has no vertex at all
    """
    config = config or DEFAULT_CONFIG
    if h.equalities:
        raise DimensionError("Brute-force enumeration expects a projected system without equalities")
    n = h.dimension
    if n > config.max_dim:
        raise ResourceLimitError(f"Geometry is capped at dimension {config.max_dim}, system has dimension {n}")
    constraints = h.constraints
    if n == 0:
        return Polytope(0, ((),), (frozenset(),), h)
    subsets = math.comb(len(constraints), n)
    if subsets > config.max_combinations:
        raise ResourceLimitError(
            f"Brute-force enumeration would solve {subsets} systems, cap is {config.max_combinations}"
        )
    direction = _find_recession_direction(h)
    if direction is not None:
        raise UnboundedError(f"System is unbounded along direction {[str(x) for x in direction]}")

    rows = h.rows
    found: Dict[Vector, FrozenSet[int]] = {}
    for subset in combinations(range(len(constraints)), n):
        point = solve([rows[i][0] for i in subset], [rows[i][1] for i in subset])
        if point is None or point in found:
            continue
        if all(dot(a, point) >= b for a, b in rows):
            found[point] = frozenset(i for i, (a, b) in enumerate(rows) if dot(a, point) == b)
    if not found:
        raise InputError("System has no vertices; it is empty or contains a line")
    vertices = tuple(sorted(found))
    logger.debug(f"Brute force found {len(vertices)} vertices from {subsets} subsets")
    return Polytope(n, vertices, tuple(found[v] for v in vertices), h)


def _nested_compatible(chosen: List[int], candidate: int, members: FrozenSet[int]) -> bool:
    for other in chosen:
        if other & candidate and other & ~candidate and candidate & ~other:
            return False
    disjoint = [other for other in chosen if not other & candidate]

    def unions(start: int, union: int) -> Iterator[int]:
        for position in range(start, len(disjoint)):
            other = disjoint[position]
            if not other & union:
                yield union | other
                yield from unions(position + 1, union | other)

    return all(union not in members for union in unions(0, candidate))


def enumerate_vertices_nested(b: BuildingSet) -> List[FrozenSet[int]]:
    """Maximal nested sets: n-element facet collections meeting in a vertex.

    A collection qualifies when its members are pairwise nested or disjoint,
    and no union of two or more pairwise disjoint members is in ``b``.

    Raises:
        DimensionError: If the full ground set is not a member
    """
    if not has_full_ground(b):
        raise DimensionError(f"Full ground set [1..{b.ground_size}] is not a member")
    facets = [mask for mask in b.members if mask != b.full]
    n = b.ground_size - 1
    collections: List[FrozenSet[int]] = []
    chosen: List[int] = []

    def extend(start: int) -> None:
        if len(chosen) == n:
            collections.append(frozenset(chosen))
            return
        for position in range(start, len(facets)):
            candidate = facets[position]
            if _nested_compatible(chosen, candidate, b.member_set):
                chosen.append(candidate)
                extend(position + 1)
                chosen.pop()

    extend(0)
    return collections


def edges(p: Polytope) -> List[EdgeDescriptor]:
    """Edges of a simple polytope: vertex pairs sharing exactly n - 1 tight facets.

    Raises:
        SimplicityError: If some vertex lies on more than n facets
    """
    n = p.dimension
    if n == 0:
        return []
    for index, active in enumerate(p.vertex_facets):
        if len(active) > n:
            raise SimplicityError(f"Vertex {[str(x) for x in p.vertices[index]]} lies on {len(active)} > {n} facets")
    result = []
    for i, j in combinations(range(len(p.vertices)), 2):
        if len(p.vertex_facets[i] & p.vertex_facets[j]) != n - 1:
            continue
        difference = [b - a for a, b in zip(p.vertices[i], p.vertices[j])]
        direction, length = primitive_vector(difference)
        endpoints = (i, j)
        if length < 0:
            endpoints, length = (j, i), -length
        result.append(EdgeDescriptor(endpoints, direction, length))
    return result


def is_root_direction(direction: Sequence[int]) -> bool:
    """Whether a projected direction lifts to ``e_j - e_k`` up to sign."""
    lifted = list(direction) + [-sum(direction)]
    nonzero = sorted(x for x in lifted if x != 0)
    return nonzero == [-1, 1]


def verify_edge_directions(p: Polytope, edge_list: Optional[List[EdgeDescriptor]] = None) -> bool:
    """Every primitive edge direction lifts to ``e_j - e_k`` (projected: ``+-e_j`` or ``e_j - e_k``)."""
    edge_list = edges(p) if edge_list is None else edge_list
    bad = [edge for edge in edge_list if not is_root_direction(edge.primitive_direction)]
    for edge in bad:
        logger.debug(f"Edge {edge.endpoints} has direction {edge.primitive_direction}")
    return not bad


def delzant_check(p: Polytope, h: HalfspaceSystem) -> bool:
    """At each vertex the primitive outward facet normals form a basis of Z^n.

    Raises:
        SimplicityError: If some vertex lies on more than n facets
    """
    n = p.dimension
    for index, active in enumerate(p.vertex_facets):
        if len(active) > n:
            raise SimplicityError(f"Vertex {[str(x) for x in p.vertices[index]]} lies on {len(active)} > {n} facets")
        if n == 0:
            continue
        normals = [primitive_vector([-a for a in h.rows[c][0]])[0] for c in sorted(active)]
        if abs(sympy.Matrix(normals).det()) != 1:
            logger.debug(f"Vertex {index} normals {normals} are not unimodular")
            return False
    return True


def support_minkowski(b: BuildingSet, w: Sequence) -> Fraction:
    """Support function of ``sum_{I in B} Delta_I``: ``sum_I max_{i in I} w_i``.

    Raises:
        InputError: If ``w`` does not have one entry per ground element
    """
    if len(w) != b.ground_size:
        raise InputError(f"Direction has {len(w)} entries, ground set has {b.ground_size}")
    weights = [Fraction(x) for x in w]
    total = Fraction(0)
    for mask in b.members:
        total += max(weights[i] for i in range(b.ground_size) if mask >> i & 1)
    return total


def contains_segment(h: HalfspaceSystem, p: Sequence, q: Sequence) -> bool:
    """Whether the segment [p, q] lies in the polytope; by convexity the endpoints decide.

    Raises:
        InputError: If a point has the wrong dimension
    """
    p = tuple(Fraction(x) for x in p)
    q = tuple(Fraction(x) for x in q)
    return h.satisfies(p) and h.satisfies(q)


def chord_interval(
    h: HalfspaceSystem, point: Sequence, direction: Sequence
) -> Optional[Tuple[Optional[Fraction], Optional[Fraction]]]:
    """Parameter range of ``point + t * direction`` inside the polytope.

    The base point need not be feasible.

    Returns:
        ``(lo, hi)`` with None for an unbounded side, or None when the line
        misses the polytope
    """
    point = tuple(Fraction(x) for x in point)
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for constraint in h.constraints:
        if constraint.sense == EQ:
            slope = Fraction(dot(constraint.coefficients, direction))
            offset = constraint.rhs - constraint.value(point)
            if slope == 0:
                if offset != 0:
                    return None
                continue
            fixed = offset / slope
            lo = fixed if lo is None else max(lo, fixed)
            hi = fixed if hi is None else min(hi, fixed)
            continue
        a, b = constraint.normalized()
        slope = Fraction(dot(a, direction))
        gap = dot(a, point) - b
        if slope > 0:
            bound = -gap / slope
            lo = bound if lo is None else max(lo, bound)
        elif slope < 0:
            bound = -gap / slope
            hi = bound if hi is None else min(hi, bound)
        elif gap < 0:
            return None
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def check_irredundant(p: Polytope, h: HalfspaceSystem) -> bool:
    """Each inequality is tight on a vertex set of affine dimension n - 1."""
    n = p.dimension
    for index, constraint in enumerate(h.constraints):
        if constraint.sense == EQ:
            continue
        points = [p.vertices[v] for v, active in enumerate(p.vertex_facets) if index in active]
        if not points:
            logger.debug(f"Constraint {constraint.name()} touches no vertex")
            return False
        base = points[0]
        differences = [[x - y for x, y in zip(point, base)] for point in points[1:]]
        rank = sympy.Matrix(differences).rank() if differences else 0
        if rank != n - 1:
            logger.debug(f"Constraint {constraint.name()} spans a face of dimension {rank}")
            return False
    return True


def check_oracle_agreement(b: BuildingSet, p: Polytope) -> bool:
    """Brute-force vertices and maximal nested sets agree in count and incidence."""
    collections = enumerate_vertices_nested(b)
    if len(collections) != len(p.vertices):
        logger.debug(f"{len(collections)} nested sets against {len(p.vertices)} vertices")
        return False
    labels = [p.facet_labels(v) for v in range(len(p.vertices))]
    for collection in collections:
        hits = sum(1 for active in labels if collection <= active)
        if hits != 1:
            logger.debug(f"Nested set {[format_subset(m) for m in collection]} meets {hits} vertices")
            return False
    return True


def random_directions(size: int, count: int, seed: int, bound: int = 10) -> List[Tuple[int, ...]]:
    rng = random.Random(seed)
    return [tuple(rng.randint(-bound, bound) for _ in range(size)) for _ in range(count)]


def check_support_function(b: BuildingSet, p: Polytope, directions: Sequence[Sequence[int]]) -> bool:
    """``support_minkowski`` equals the support function of the enumerated vertices."""
    total = p.system.total
    lifted = [lift_point(v, total) for v in p.vertices]
    for w in directions:
        expected = support_minkowski(b, w)
        actual = max(dot(v, w) for v in lifted)
        if expected != actual:
            logger.debug(f"Support mismatch along {w}: Minkowski {expected}, vertices {actual}")
            return False
    return True


def permutohedron_hrep(c: Sequence) -> HalfspaceSystem:
    """Ambient system of the permutohedron with vertices the permutations of ``c``.

    ``sum_{i in I} x_i >= c_1 + ... + c_|I|`` for every nonempty proper I,
    and ``sum x_i = sum c``. ``c`` must be sorted increasingly.
    """
    values = [Fraction(x) for x in c]
    size = len(values)
    prefix = [sum(values[:k], Fraction(0)) for k in range(size + 1)]
    total = prefix[size]
    full = full_mask(size)
    constraints = [Constraint(full, (1,) * size, total, EQ)]
    for mask in range(1, full):
        coefficients = tuple(1 if mask >> i & 1 else 0 for i in range(size))
        constraints.append(Constraint(mask, coefficients, prefix[sum(coefficients)], GE))
    return HalfspaceSystem(size, tuple(constraints), total)


def nestohedron(b: BuildingSet, config: Optional[ConfigModel] = None) -> Tuple[HalfspaceSystem, Polytope]:
    """Projected H-representation of P_B with its brute-force vertex set."""
    h = project(hrep(b))
    return h, enumerate_vertices_bruteforce(h, config)
