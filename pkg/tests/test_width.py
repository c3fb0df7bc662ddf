"""Tests for the width formula, its certificates and the derived comparisons."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphwidth.core.building_set import BuildingSet, from_graph
from graphwidth.core.errors import DimensionError, InputError
from graphwidth.core.graph import Graph
from graphwidth.core.polytope import hrep, project
from graphwidth.core.width import (
    certify,
    check_f_monotonic,
    check_k_inequality,
    check_parallel_facets_exist,
    gromov_width,
    lower_certificate,
    nestohedron_bounds,
    nonsqueezing_report,
    permutohedron_width,
    subgraph_monotonicity,
    upper_certificate,
)
from graphwidth.io.families import expected_width, generate_family
from graphwidth.models import ConfigModel
from tests.strategies import atlas_graphs, connected_graphs


class TestGromovWidth:
    @pytest.mark.parametrize(
        "kind, size, width",
        [("complete", 4, 7), ("path", 4, 3), ("cycle", 4, 6), ("star", 4, 4)],
    )
    def test_examples(self, kind, size, width):
        assert gromov_width(generate_family(kind, size)).width == width

    def test_star_pivot_is_a_leaf(self, star4):
        result = gromov_width(star4)
        assert result.pivot_vertex == 2
        assert result.k.values == (8, 5, 5, 5)
        assert result.total == 11

    def test_single_vertex(self):
        result = gromov_width(Graph(1))
        assert result.width == 0
        assert result.pivot_vertex is None
        assert result.component_widths == ()

    def test_edgeless(self):
        assert gromov_width(Graph(3)).width == 0

    def test_disconnected_takes_component_minimum(self):
        g = Graph.from_edges(5, [(1, 2), (3, 4), (4, 5)])
        result = gromov_width(g)
        assert result.width == 1
        assert result.pivot_vertex == 1
        assert [(c.labels, c.width, c.pivot_vertex) for c in result.component_widths] == [
            ((1, 2), 1, 1),
            ((3, 4, 5), 2, 3),
        ]

    @pytest.mark.parametrize(
        "kind, sizes",
        [
            ("complete", range(2, 11)),
            ("path", range(2, 14)),
            ("cycle", range(3, 12)),
            ("star", range(2, 14)),
        ],
    )
    def test_closed_forms(self, kind, sizes):
        for size in sizes:
            assert gromov_width(generate_family(kind, size)).width == expected_width(kind, size)


class TestLowerCertificate:
    def test_path(self, path3):
        certificate = lower_certificate(path3)
        assert certificate.eliminated_vertex == 1
        assert certificate.coordinate_labels == (3, 2)
        assert certificate.a == 2
        assert certificate.rho == 2
        assert certificate.center == (2, 2)
        assert [(s.start, s.end) for s in certificate.segments] == [((1, 2), (3, 2)), ((2, 1), (2, 3))]
        assert all(s.primitive_direction in ((1, 0), (0, 1)) for s in certificate.segments)
        assert certificate.containment_checked

    def test_star(self, star4):
        certificate = lower_certificate(star4)
        assert certificate.eliminated_vertex == 2
        assert certificate.coordinate_labels == (1, 4, 3)
        assert certificate.a == Fraction(5, 2)
        assert certificate.rho == 4

    def test_single_edge(self, k2):
        certificate = lower_certificate(k2)
        assert certificate.rho == 1
        assert certificate.center == (Fraction(3, 2),)
        [segment] = certificate.segments
        assert (segment.start, segment.end) == ((1,), (2,))

    def test_center_within_segments(self, cycle4):
        certificate = lower_certificate(cycle4)
        assert 1 <= certificate.a <= certificate.rho + 1

    @pytest.mark.parametrize("g", [Graph(1), Graph(2), Graph.from_edges(3, [(1, 2)])])
    def test_rejects_disconnected_or_trivial(self, g):
        with pytest.raises(InputError):
            lower_certificate(g)


class TestUpperCertificate:
    def test_path(self, path3):
        certificate = upper_certificate(path3)
        assert certificate.u == (1, 1)
        assert (certificate.lam, certificate.mu, certificate.bound) == (5, 3, 2)
        assert certificate.edge_pairings_ok
        assert certificate.support_attained
        assert certificate.verified_by == "vertices"

    def test_triangle(self, triangle):
        certificate = upper_certificate(triangle)
        assert (certificate.lam, certificate.mu, certificate.bound) == (6, 3, 3)

    def test_single_edge(self, k2):
        certificate = upper_certificate(k2)
        assert certificate.u == (1,)
        assert certificate.bound == 1

    def test_facet_data_without_geometry(self, star4, no_geometry):
        certificate = upper_certificate(star4, no_geometry)
        assert certificate.verified_by == "facets"
        assert certificate.bound == 4

    def test_vertex_cap_falls_back_to_facets(self, cycle4):
        certificate = upper_certificate(cycle4, ConfigModel(max_dim=2))
        assert certificate.verified_by == "facets"
        assert certificate.bound == 6


class TestStructuralChecks:
    def test_parallel_facets_for_the_pivot(self, path3, star4):
        assert check_parallel_facets_exist(path3)
        assert check_parallel_facets_exist(star4)

    def test_forced_center_pivot_disconnects(self, star4):
        assert check_parallel_facets_exist(star4, pivot=1) is False

    def test_pivot_outside_graph(self, path3):
        with pytest.raises(InputError):
            check_parallel_facets_exist(path3, pivot=9)

    @pytest.mark.parametrize("fixture", ["k2", "star4", "cycle4"])
    def test_k_inequality(self, fixture, request):
        assert check_k_inequality(request.getfixturevalue(fixture))

    @pytest.mark.parametrize("fixture", ["k2", "path3", "triangle"])
    def test_f_monotonic(self, fixture, request):
        assert check_f_monotonic(from_graph(request.getfixturevalue(fixture)))

    def test_f_bound_fails_on_counterexample(self, counterexample):
        assert not check_f_monotonic(counterexample)

    def test_f_needs_full_ground(self):
        with pytest.raises(DimensionError):
            check_f_monotonic(from_graph(Graph(2)))

    @given(connected_graphs(max_vertices=7))
    @settings(max_examples=50, deadline=None)
    def test_checks_hold_on_random_graphs(self, g):
        assert check_k_inequality(g)
        assert check_f_monotonic(from_graph(g))
        assert check_parallel_facets_exist(g)


class TestMonotonicity:
    def test_path_inside_triangle(self, triangle, path3):
        result = subgraph_monotonicity(triangle, path3)
        assert (result.width_g, result.width_h) == (3, 2)
        assert not result.strict_expected
        assert result.strict
        assert result.holds

    def test_edge_inside_path(self, path3, k2):
        result = subgraph_monotonicity(path3, k2, [2, 3])
        assert (result.width_g, result.width_h) == (2, 1)
        assert result.strict_expected and result.strict

    def test_equal_graphs(self, cycle4):
        result = subgraph_monotonicity(cycle4, cycle4)
        assert result.width_g == result.width_h == 6
        assert result.holds and not result.strict

    def test_not_a_subgraph(self, path3, triangle):
        with pytest.raises(InputError):
            subgraph_monotonicity(path3, triangle)

    def test_bad_embedding(self, path3, k2):
        with pytest.raises(InputError):
            subgraph_monotonicity(path3, k2, [1, 3])

    @pytest.mark.parametrize("seed", range(500))
    def test_random_pairs(self, seed):
        rng = random.Random(seed)
        size = rng.randint(2, 8)
        edges = {(rng.randint(1, v - 1), v) for v in range(2, size + 1)}
        edges |= {(i, j) for i in range(1, size + 1) for j in range(i + 1, size + 1) if rng.random() < 0.3}
        g = Graph.from_edges(size, edges)

        embedding = sorted(rng.sample(range(1, size + 1), rng.randint(1, size)))
        index = {old: new for new, old in enumerate(embedding, start=1)}
        kept = [(index[i], index[j]) for i, j in g.edges if i in index and j in index and rng.random() < 0.7]
        h = Graph.from_edges(len(embedding), kept)

        result = subgraph_monotonicity(g, h, embedding)
        assert result.width_h <= result.width_g
        if len(embedding) < size:
            assert result.strict


class TestNonsqueezing:
    def test_triangle_over_edge(self, triangle, k2):
        report = nonsqueezing_report(triangle, k2)
        assert (report.width_g, report.width_h, report.k, report.m) == (3, 1, 1, 0)
        assert report.obstructed
        assert report.statement == (
            "w(M_G x R^0) = w(M_G) = 3 > 1 = w(M_H) = w(M_H x R^2); "
            "M_G x R^0 admits no symplectic embedding into M_H x R^2"
        )

    def test_paths_with_stabilization(self):
        report = nonsqueezing_report(generate_family("path", 4), generate_family("path", 3), m=2)
        assert (report.width_g, report.width_h) == (3, 2)
        assert "R^4" in report.statement and "R^6" in report.statement

    def test_same_graph_rejected(self, path3):
        with pytest.raises(InputError):
            nonsqueezing_report(path3, path3)

    def test_negative_m_rejected(self, triangle, k2):
        with pytest.raises(InputError):
            nonsqueezing_report(triangle, k2, m=-1)


class TestPermutohedron:
    def test_powers_of_two_match_triangle(self):
        result = permutohedron_width([1, 2, 4])
        assert result.width == 3
        assert result.lower.a == 2
        assert result.lower.rho == 3
        assert result.upper.u == (1, 0)
        assert (result.upper.lam, result.upper.mu) == (4, 1)
        assert result.upper.verified_by == "vertices"

    def test_segment(self):
        result = permutohedron_width(["0", "1"])
        assert result.width == 1
        assert result.lower.center == (Fraction(1, 2),)

    def test_four_points(self):
        result = permutohedron_width([0, 1, 2, 3])
        assert result.width == 3
        assert result.lower.a == Fraction(3, 2)

    def test_rational_entries(self):
        assert permutohedron_width(["1/2", "3/4", "2"]).width == Fraction(3, 2)

    def test_single_entry(self):
        result = permutohedron_width([5])
        assert result.width == 0
        assert result.lower is None and result.upper is None

    def test_permutation_check_without_geometry(self, no_geometry):
        assert permutohedron_width([1, 2, 4], no_geometry).upper.verified_by == "permutations"

    def test_facets_only_past_the_cap(self):
        config = ConfigModel(geometry=False, max_combinations=1)
        assert permutohedron_width([1, 2, 4], config).upper.verified_by == "facets"

    @pytest.mark.parametrize("c", [[], [1, 1], [2, 1], ["x"], [0.5, 1]])
    def test_invalid_vectors(self, c):
        with pytest.raises(InputError):
            permutohedron_width(c)

    @given(
        st.lists(
            st.fractions(min_value=-20, max_value=20, max_denominator=6),
            min_size=2,
            max_size=7,
            unique=True,
        ).map(sorted)
    )
    @settings(max_examples=100, deadline=None)
    def test_random_vectors(self, c):
        result = permutohedron_width(c, ConfigModel(geometry=False))
        assert result.width == c[-1] - c[0]
        assert result.lower.rho == result.upper.bound == result.width


class TestNestohedronBounds:
    def test_counterexample(self, counterexample):
        report = nestohedron_bounds(counterexample)
        assert report.formula_value == 2
        assert report.best_upper == 1
        assert report.best_u == (1, 1, 0)
        assert report.lower_found <= report.best_upper
        assert not report.formula_tight

    def test_triangle(self, triangle):
        report = nestohedron_bounds(from_graph(triangle))
        assert (report.formula_value, report.best_upper, report.lower_found) == (3, 3, 3)
        assert report.formula_tight

    def test_single_edge(self, k2):
        report = nestohedron_bounds(from_graph(k2))
        assert (report.formula_value, report.best_upper, report.lower_found) == (1, 1, 1)
        assert report.formula_tight

    def test_single_element(self):
        report = nestohedron_bounds(BuildingSet.from_members(1, [[1]]))
        assert report.formula_value == 0
        assert report.formula_tight

    def test_needs_full_ground(self):
        with pytest.raises(DimensionError):
            nestohedron_bounds(BuildingSet.from_members(2, [[1], [2]]))

    @pytest.mark.parametrize(
        "g", [g for g in atlas_graphs(4, connected=True) if g.vertex_count >= 2], ids=lambda g: str(g.sorted_edges)
    )
    def test_graph_associahedra_are_tight(self, g):
        report = nestohedron_bounds(from_graph(g))
        assert report.formula_value == gromov_width(g).width
        assert report.formula_tight


class TestCertify:
    def test_path(self, path3):
        report = certify(path3)
        assert report.result.width == 2
        [component] = report.components
        assert component.labels == (1, 2, 3)
        assert component.pivot_vertex == 1
        assert component.lower.coordinate_labels == (3, 2)
        assert component.upper.eliminated_vertex == 1
        assert component.geometry.passed
        assert component.geometry.vertex_count == 5
        assert component.geometry.edge_count == 5
        assert component.geometry_skipped is None

    def test_components_use_original_labels(self):
        report = certify(Graph.from_edges(5, [(1, 2), (3, 4), (4, 5)]))
        assert report.result.width == 1
        edge, path = report.components
        assert (edge.labels, edge.width, edge.pivot_vertex) == ((1, 2), 1, 1)
        assert edge.lower.coordinate_labels == (2,)
        assert (path.labels, path.width, path.pivot_vertex) == ((3, 4, 5), 2, 3)
        assert path.lower.coordinate_labels == (5, 4)
        assert path.lower.eliminated_vertex == 3

    def test_edgeless(self):
        report = certify(Graph(3))
        assert report.result.width == 0
        assert report.components == ()

    def test_geometry_disabled(self, star4, no_geometry):
        [component] = certify(star4, no_geometry).components
        assert component.geometry is None
        assert component.geometry_skipped == "geometry disabled"
        assert component.upper.verified_by == "facets"

    def test_geometry_over_dimension_cap(self, path3):
        [component] = certify(path3, ConfigModel(max_dim=1)).components
        assert component.geometry is None
        assert component.geometry_skipped == "dimension 2 exceeds max_dim 1"


@pytest.mark.slow
@pytest.mark.parametrize(
    "g", [g for g in atlas_graphs(6, connected=True) if g.vertex_count >= 2], ids=lambda g: str(g.sorted_edges)
)
def test_certificates_are_tight_on_small_graphs(g):
    config = ConfigModel(max_combinations=30000)
    report = certify(g, config)
    [component] = report.components
    assert component.lower.rho == component.upper.bound == report.result.width
    assert component.k_inequality and component.f_monotonic and component.parallel_facets
    assert component.upper.support_attained and component.upper.edge_pairings_ok
    n = g.vertex_count - 1
    constraints = len(project(hrep(from_graph(g))).constraints)
    if math.comb(constraints, n) <= config.max_combinations:
        assert component.upper.verified_by == "vertices"
        assert component.geometry is not None and component.geometry.passed
    else:
        assert component.upper.verified_by == "facets"
        assert component.geometry is None
