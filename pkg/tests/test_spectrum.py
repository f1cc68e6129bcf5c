"""Spectrum classification and representative modules."""

import cmath

import pytest

from graphlift import (
    LOOP_GRAPH,
    LOOP_GRAPH_WITH_SOURCES,
    UNSUPPORTED,
    Edge,
    Graph,
    LensParams,
    SpectrumError,
    check_hypotheses,
    classify,
    is_indecomposable,
    is_irreducible,
    lens_graph_coprime,
    projective_graph,
    representative_module,
    sphere_even_graph,
    sphere_odd_graph,
    validate_module,
)

from helpers import one_dim_components, relabel_graph

LENS_CASES = (
    LensParams(2, 3, (1, 1)),
    LensParams(2, 5, (1, 2)),
    LensParams(3, 4, (1, 3, 1)),
)


def two_loop_graph() -> Graph:
    return Graph(("1",), (Edge("a", "1", "1"), Edge("b", "1", "1")))


def receiving_sink_graph() -> Graph:
    return Graph(("1", "2"), (Edge("11", "1", "1"), Edge("21", "1", "2")))


def bare_cycle_graph() -> Graph:
    return Graph(("1", "2"), (Edge("a", "1", "2"), Edge("b", "2", "1")))


class TestHypotheses:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_odd_spheres_are_loop_graphs(self, n):
        report = check_hypotheses(sphere_odd_graph(n))
        assert report.verdict == LOOP_GRAPH
        assert report.diagnostics == ()
        assert not report.by_analogy

    @pytest.mark.parametrize("n", range(1, 7))
    def test_even_spheres_have_recognized_sources(self, n):
        report = check_hypotheses(sphere_even_graph(n))
        assert report.verdict == LOOP_GRAPH_WITH_SOURCES
        assert not report.by_analogy

    @pytest.mark.parametrize("n", range(1, 6))
    def test_projective_graphs_are_loop_graphs(self, n):
        assert check_hypotheses(projective_graph(n)).verdict == LOOP_GRAPH

    @pytest.mark.parametrize("params", LENS_CASES, ids=str)
    def test_lens_graphs_are_loop_graphs(self, params):
        report = check_hypotheses(lens_graph_coprime(params))
        assert report.verdict == LOOP_GRAPH

    def test_double_loop_diagnosed(self):
        report = check_hypotheses(two_loop_graph())
        assert report.verdict == UNSUPPORTED
        assert any("more than one loop" in d for d in report.diagnostics)

    def test_receiving_sink_diagnosed(self):
        report = check_hypotheses(receiving_sink_graph())
        assert report.verdict == UNSUPPORTED
        assert any("loopless vertices receiving" in d for d in report.diagnostics)

    def test_bare_cycle_diagnosed(self):
        report = check_hypotheses(bare_cycle_graph())
        assert report.verdict == UNSUPPORTED
        assert any("cycle through distinct vertices" in d
                   for d in report.diagnostics)

    def test_unrecognized_source_shape_flagged_as_analogy(self):
        g = Graph(
            ("1", "2", "9"),
            (
                Edge("11", "1", "1"),
                Edge("21", "1", "2"),
                Edge("22", "2", "2"),
                Edge("19", "9", "1"),
            ),
        )
        report = check_hypotheses(g)
        assert report.verdict == LOOP_GRAPH_WITH_SOURCES
        assert report.by_analogy


class TestClassify:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_odd_sphere_components(self, n):
        desc = classify(sphere_odd_graph(n))
        assert desc.class_tag == LOOP_GRAPH
        assert desc.circles == tuple(str(i) for i in range(1, n + 1))
        assert desc.points == ()

    @pytest.mark.parametrize("n", range(1, 7))
    def test_even_sphere_components(self, n):
        desc = classify(sphere_even_graph(n))
        assert desc.class_tag == LOOP_GRAPH_WITH_SOURCES
        assert desc.circles == tuple(str(i) for i in range(1, n + 1))
        assert desc.points == (str(n + 1), str(n + 2))

    def test_projective_components(self):
        desc = classify(projective_graph(3))
        assert desc.circles == ("1", "2", "3")
        assert desc.points == ()

    @pytest.mark.parametrize("params", LENS_CASES, ids=str)
    def test_lens_components(self, params):
        g = lens_graph_coprime(params)
        desc = classify(g)
        assert len(desc.circles) == params.n
        assert desc.points == ()

    def test_unsupported_graph_raises_with_reasons(self):
        with pytest.raises(SpectrumError, match="more than one loop"):
            classify(two_loop_graph())

    def test_relabeling_moves_the_components_along(self):
        g = sphere_odd_graph(3)
        mapping = {"1": "c", "2": "a", "3": "b"}
        desc = classify(relabel_graph(g, mapping))
        assert set(desc.circles) == {"a", "b", "c"}


class TestOneDimCompleteness:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_odd_spheres_match_brute_force(self, n):
        g = sphere_odd_graph(n)
        desc = classify(g)
        assert (desc.circles, desc.points) == one_dim_components(g)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_even_spheres_match_brute_force(self, n):
        g = sphere_even_graph(n)
        desc = classify(g)
        assert (desc.circles, desc.points) == one_dim_components(g)

    @pytest.mark.parametrize("params", LENS_CASES, ids=str)
    def test_lens_graphs_match_brute_force(self, params):
        g = lens_graph_coprime(params)
        desc = classify(g)
        assert (desc.circles, desc.points) == one_dim_components(g)


class TestRepresentatives:
    def test_circle_representatives_are_irreducible(self):
        g = sphere_odd_graph(3)
        for v in classify(g).circles:
            m = representative_module(g, v, cmath.exp(0.7j))
            assert validate_module(m).passed
            assert is_irreducible(m)
            assert is_indecomposable(m)

    def test_point_representatives_are_irreducible(self):
        g = sphere_even_graph(2)
        for v in classify(g).points:
            m = representative_module(g, v)
            assert validate_module(m).passed
            assert is_irreducible(m)

    def test_phase_required_on_circles(self):
        g = sphere_even_graph(2)
        with pytest.raises(SpectrumError, match="not an isolated point"):
            representative_module(g, "1")

    def test_phase_refused_on_points(self):
        g = sphere_even_graph(2)
        with pytest.raises(SpectrumError, match="does not carry a circle"):
            representative_module(g, "4", 1j)

    def test_unsupported_graph_refused(self):
        with pytest.raises(SpectrumError):
            representative_module(two_loop_graph(), "1", 1j)
