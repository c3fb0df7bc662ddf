"""Tests for H-representations, the vertex oracles and the polyhedral checks."""

from fractions import Fraction
from itertools import permutations

import pytest

from graphwidth.core.building_set import BuildingSet, from_graph
from graphwidth.core.errors import DimensionError, ResourceLimitError, StructureError, UnboundedError
from graphwidth.core.graph import mask_of
from graphwidth.core.polytope import (
    EQ,
    GE,
    LE,
    Constraint,
    HalfspaceSystem,
    check_irredundant,
    check_oracle_agreement,
    check_support_function,
    chord_interval,
    contains_segment,
    delzant_check,
    edges,
    enumerate_vertices_bruteforce,
    enumerate_vertices_nested,
    hrep,
    lift_point,
    nestohedron,
    permutohedron_hrep,
    project,
    random_directions,
    support_minkowski,
    verify_edge_directions,
)
from graphwidth.models import ConfigModel
from graphwidth.utils.rational import null_vector, solve
from tests.strategies import atlas_graphs

PENTAGON = [(1, 2), (1, 4), (2, 1), (3, 1), (3, 2)]
HEXAGON = sorted({p[:2] for p in permutations((1, 2, 4))})


def _system(dimension, rows):
    return HalfspaceSystem(dimension, tuple(Constraint(None, a, Fraction(b), sense) for a, b, sense in rows))


@pytest.fixture
def unit_square():
    return _system(2, [((1, 0), 0, GE), ((0, 1), 0, GE), ((1, 0), 1, LE), ((0, 1), 1, LE)])


class TestHrep:
    def test_k2(self, k2):
        h = hrep(from_graph(k2))
        assert [(c.coefficients, c.rhs, c.sense) for c in h.constraints] == [
            ((1, 1), 3, EQ),
            ((1, 0), 1, GE),
            ((0, 1), 1, GE),
        ]

    def test_path_right_hand_sides(self, path3):
        h = hrep(from_graph(path3))
        assert h.total == 6
        assert [c.rhs for c in h.constraints if c.sense == GE] == [1, 1, 1, 3, 3]

    def test_counterexample(self, counterexample):
        h = hrep(counterexample)
        assert h.total == 7
        assert {(c.coefficients, c.rhs) for c in h.constraints if c.sense == GE} == {
            ((1, 0, 0, 0), 1),
            ((0, 1, 0, 0), 1),
            ((0, 0, 1, 0), 1),
            ((0, 0, 0, 1), 1),
            ((1, 1, 0, 0), 3),
            ((0, 0, 1, 1), 3),
        }

    def test_full_ground_required(self):
        with pytest.raises(DimensionError):
            hrep(BuildingSet.from_members(2, [[1], [2]]))

    def test_building_set_axioms_required(self):
        with pytest.raises(StructureError):
            hrep(BuildingSet.from_members(3, [[1], [2], [1, 2, 3]]))


class TestProjection:
    def test_k2_interval(self, k2):
        h = project(hrep(from_graph(k2)))
        assert h.dimension == 1
        assert [(c.coefficients, c.rhs, c.sense) for c in h.constraints] == [((1,), 1, GE), ((1,), 2, LE)]

    def test_path_facets(self, path3):
        h = project(hrep(from_graph(path3)))
        by_label = {c.label: c for c in h.constraints}
        singleton = by_label[mask_of([3])]
        assert (singleton.coefficients, singleton.rhs, singleton.sense) == ((1, 1), 5, LE)
        pair = by_label[mask_of([2, 3])]
        assert (pair.coefficients, pair.rhs, pair.sense) == ((1, 0), 3, LE)

    def test_counterexample_parallel_facets(self, counterexample):
        h = project(hrep(counterexample))
        bounds = {(c.sense, c.rhs) for c in h.constraints if c.coefficients == (1, 1, 0)}
        assert bounds == {(GE, 3), (LE, 4)}

    def test_projection_needs_the_equality(self, unit_square):
        with pytest.raises(DimensionError):
            project(unit_square)

    def test_lift_point(self):
        assert lift_point((1, 2), Fraction(6)) == (1, 2, 3)


class TestBruteForce:
    def test_k2(self, k2):
        _, p = nestohedron(from_graph(k2))
        assert p.vertices == ((1,), (2,))

    def test_pentagon(self, path3):
        _, p = nestohedron(from_graph(path3))
        assert list(p.vertices) == PENTAGON

    def test_hexagon(self, triangle):
        _, p = nestohedron(from_graph(triangle))
        assert list(p.vertices) == HEXAGON

    def test_single_vertex_is_a_point(self):
        from graphwidth.core.graph import Graph

        h, p = nestohedron(from_graph(Graph(1)))
        assert h.dimension == 0
        assert p.vertices == ((),)

    def test_unbounded(self):
        with pytest.raises(UnboundedError):
            enumerate_vertices_bruteforce(_system(1, [((1,), 0, GE)]))

    def test_unbounded_quadrant(self):
        with pytest.raises(UnboundedError):
            enumerate_vertices_bruteforce(_system(2, [((1, 0), 0, GE), ((0, 1), 0, GE)]))

    def test_equality_rejected(self, path3):
        with pytest.raises(DimensionError):
            enumerate_vertices_bruteforce(hrep(from_graph(path3)))

    def test_dimension_cap(self, path3):
        with pytest.raises(ResourceLimitError):
            nestohedron(from_graph(path3), ConfigModel(max_dim=1))

    def test_combination_cap(self, path3):
        with pytest.raises(ResourceLimitError):
            nestohedron(from_graph(path3), ConfigModel(max_combinations=5))

    def test_vertices_are_feasible_and_tight(self, cycle4):
        h, p = nestohedron(from_graph(cycle4))
        for vertex, active in zip(p.vertices, p.vertex_facets):
            assert h.satisfies(vertex)
            assert active == {i for i, c in enumerate(h.constraints) if c.is_tight(vertex)}
        assert len(set(p.vertices)) == len(p.vertices)

    def test_permutohedron(self):
        h = project(permutohedron_hrep((1, 2, 4)))
        p = enumerate_vertices_bruteforce(h)
        assert list(p.vertices) == HEXAGON


class TestNestedSets:
    def test_pentagon_collections(self, path3):
        b = from_graph(path3)
        collections = enumerate_vertices_nested(b)
        assert len(collections) == 5
        assert frozenset({mask_of([1]), mask_of([3])}) in collections
        assert frozenset({mask_of([1]), mask_of([1, 2])}) in collections
        assert frozenset({mask_of([2]), mask_of([2, 3])}) in collections
        assert frozenset({mask_of([1]), mask_of([2])}) not in collections
        assert frozenset({mask_of([1]), mask_of([2, 3])}) not in collections

    def test_hexagon_collections(self, triangle):
        collections = enumerate_vertices_nested(from_graph(triangle))
        assert len(collections) == 6
        assert frozenset({mask_of([1]), mask_of([3])}) not in collections

    def test_counterexample_parallel_facets_never_meet(self, counterexample):
        both = {mask_of([1, 2]), mask_of([3, 4])}
        assert all(not both <= collection for collection in enumerate_vertices_nested(counterexample))

    def test_counterexample_oracles_agree(self, counterexample):
        _, p = nestohedron(counterexample)
        assert check_oracle_agreement(counterexample, p)


class TestEdges:
    def test_pentagon_edges(self, path3):
        _, p = nestohedron(from_graph(path3))
        found = {
            (p.vertices[i], p.vertices[j]): (edge.primitive_direction, edge.affine_length)
            for edge in edges(p)
            for i, j in [edge.endpoints]
        }
        assert len(found) == 5
        assert found[((1, 2), (1, 4))] == ((0, 1), 2)
        assert found[((1, 2), (2, 1))] == ((1, -1), 1)

    def test_k2_edge(self, k2):
        _, p = nestohedron(from_graph(k2))
        [edge] = edges(p)
        assert edge.primitive_direction == (1,)
        assert edge.affine_length == 1

    def test_endpoint_difference(self, star4):
        _, p = nestohedron(from_graph(star4))
        for edge in edges(p):
            start, end = (p.vertices[i] for i in edge.endpoints)
            assert edge.affine_length > 0
            assert tuple(b - a for a, b in zip(start, end)) == tuple(
                edge.affine_length * x for x in edge.primitive_direction
            )

    @pytest.mark.parametrize("fixture", ["path3", "triangle", "star4", "cycle4"])
    def test_root_directions(self, fixture, request):
        _, p = nestohedron(from_graph(request.getfixturevalue(fixture)))
        assert verify_edge_directions(p)

    def test_counterexample_root_directions(self, counterexample):
        _, p = nestohedron(counterexample)
        assert verify_edge_directions(p)


class TestDelzant:
    @pytest.mark.parametrize("fixture", ["path3", "triangle"])
    def test_graph_associahedra(self, fixture, request):
        h, p = nestohedron(from_graph(request.getfixturevalue(fixture)))
        assert delzant_check(p, h)

    def test_unit_square(self, unit_square):
        p = enumerate_vertices_bruteforce(unit_square)
        assert len(p.vertices) == 4
        assert delzant_check(p, unit_square)

    def test_non_delzant_triangle(self):
        h = _system(2, [((1, 0), 0, GE), ((0, 1), 0, GE), ((1, 2), 2, LE)])
        p = enumerate_vertices_bruteforce(h)
        assert not delzant_check(p, h)


class TestSupportFunction:
    def test_examples(self, k2, path3):
        assert support_minkowski(from_graph(k2), (1, 0)) == 2
        assert support_minkowski(from_graph(path3), (1, 0, -1)) == 2
        assert support_minkowski(from_graph(path3), (0, 0, 0)) == 0

    def test_wrong_length(self, path3):
        from graphwidth.core.errors import InputError

        with pytest.raises(InputError):
            support_minkowski(from_graph(path3), (1, 0))

    def test_matches_vertices(self, cycle4):
        b = from_graph(cycle4)
        _, p = nestohedron(b)
        assert check_support_function(b, p, random_directions(4, 200, seed=7))

    def test_random_directions_are_seeded(self):
        assert random_directions(3, 5, seed=1) == random_directions(3, 5, seed=1)
        assert len(random_directions(3, 5, seed=1)) == 5


class TestSegmentsAndChords:
    def test_contains_segment(self, k2, path3):
        interval = project(hrep(from_graph(k2)))
        assert contains_segment(interval, (1,), (2,))
        pentagon = project(hrep(from_graph(path3)))
        assert contains_segment(pentagon, (1, 2), (3, 2))
        assert not contains_segment(pentagon, (0, 2), (1, 2))

    def test_chord_through_interior(self, path3):
        pentagon = project(hrep(from_graph(path3)))
        assert chord_interval(pentagon, (2, 2), (1, 0)) == (-1, 1)

    def test_chord_from_outside(self, path3):
        pentagon = project(hrep(from_graph(path3)))
        assert chord_interval(pentagon, (0, 2), (1, 0)) == (1, 3)
        assert chord_interval(pentagon, (0, 10), (1, 0)) is None

    def test_chord_respects_equality(self, path3):
        ambient = hrep(from_graph(path3))
        assert chord_interval(ambient, (2, 2, 2), (1, 0, -1)) == (-1, 1)
        assert chord_interval(ambient, (2, 2, 3), (1, 0, -1)) is None


class TestIrredundancy:
    def test_graph_associahedron(self, cycle4):
        h, p = nestohedron(from_graph(cycle4))
        assert check_irredundant(p, h)

    def test_redundant_row_detected(self):
        h = _system(2, [((1, 0), 0, GE), ((0, 1), 0, GE), ((1, 0), 1, LE), ((0, 1), 1, LE), ((1, 0), -1, GE)])
        p = enumerate_vertices_bruteforce(h)
        assert not check_irredundant(p, h)



class TestExactSolves:
    def test_unique_solution(self):
        assert solve([[2, 1], [1, 3]], [3, 5]) == (Fraction(4, 5), Fraction(7, 5))

    def test_singular_system(self):
        assert solve([[1, 2], [2, 4]], [1, 2]) is None

    def test_one_dimensional_kernel(self):
        assert null_vector([[1, -1, 0], [0, 1, -1]], 3) == (1, 1, 1)
        assert null_vector([[Fraction(1, 2), 1]], 2) == (-2, 1)

    def test_kernel_of_other_dimension(self):
        assert null_vector([[1, 0, 0]], 3) is None
        assert null_vector([[1, 0], [0, 1]], 2) is None

    def test_empty_system(self):
        assert null_vector([], 1) == (1,)
        assert null_vector([], 2) is None

@pytest.mark.slow
@pytest.mark.parametrize("g", atlas_graphs(5, connected=True), ids=lambda g: str(g.sorted_edges))
def test_small_graph_associahedra(g):
    """Oracle agreement, lattice vertices, simplicity, roots, Delzant and support function."""
    b = from_graph(g)
    h, p = nestohedron(b)
    n = g.vertex_count - 1
    assert all(x.denominator == 1 for vertex in p.vertices for x in vertex)
    assert all(len(active) == n for active in p.vertex_facets)
    assert check_oracle_agreement(b, p)
    assert verify_edge_directions(p)
    assert delzant_check(p, h)
    assert check_irredundant(p, h)
    assert check_support_function(b, p, random_directions(g.vertex_count, 1000, seed=0))
