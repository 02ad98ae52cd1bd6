import math

import numpy as np
import pytest

from cantorkit import core, graphs, spectral, wavelets
from cantorkit.errors import (
    BaseEdgeMismatch,
    IndexOutOfRange,
    LevelOutOfRange,
    MultiplePaths,
    NotComposable,
    SinkFound,
)

GOLDEN = (1 + math.sqrt(5)) / 2


def three_edge_graph():
    # vertices u = 0, v = 1; edges e0: u->v, e1: v->u, e2: v->v
    return graphs.directed_graph(2, ((0, 1), (1, 0), (1, 1)))


def complete2_graph():
    return graphs.directed_graph(2, ((0, 0), (0, 1), (1, 0), (1, 1)))


def loops3_graph():
    return graphs.directed_graph(1, ((0, 0), (0, 0), (0, 0)))


def test_directed_graph_validation():
    with pytest.raises(SinkFound):
        graphs.directed_graph(2, ((0, 1),))  # vertex 1 has no way out
    with pytest.raises(IndexOutOfRange):
        graphs.directed_graph(2, ((0, 2), (1, 0)))


def test_out_edges_sorted():
    g = graphs.directed_graph(2, ((1, 0), (0, 1), (0, 0), (1, 1)))
    assert g.out_edges == ((1, 2), (0, 3))


def test_edge_matrix_three_edges():
    # A[e, e'] = 1 iff e' starts where e ends
    g = three_edge_graph()
    em = graphs.edge_matrix(g)
    assert em.rows == ((0, 1, 1), (1, 0, 0), (0, 1, 1))
    assert not em.strict


def test_edge_shift_counts_fibonacci():
    # paths in the 3-edge graph grow like the golden ratio
    g = three_edge_graph()
    em = graphs.edge_matrix(g)
    counts = [core.word_count(em, k) for k in range(1, 8)]
    assert counts == [3, 5, 8, 13, 21, 34, 55]


def test_graph_perron_golden_ratio():
    pd = graphs.graph_perron(three_edge_graph())
    assert pd.radius == pytest.approx(GOLDEN, abs=1e-10)
    # p is the edge eigenvector: p_e0 = p_e2, normalized to sum 1
    assert pd.p[0] == pytest.approx(pd.p[2], abs=1e-9)
    assert pd.p.sum() == pytest.approx(1.0, abs=1e-12)
    # closed form: p = (2-phi, 2 phi-3, 2-phi), the sum-1 eigenvector
    np.testing.assert_allclose(
        pd.p, [2 - GOLDEN, 2 * GOLDEN - 3, 2 - GOLDEN], atol=1e-9)


def test_vertex_measure_shortest_path():
    g = three_edge_graph()
    pd = graphs.graph_perron(g)
    vm = graphs.vertex_measure(g, 0, pd.p)
    assert vm[0] == 0.0
    # one step u -> v along e0
    assert vm[1] == pytest.approx(pd.p[0], abs=1e-10)
    vm_back = graphs.vertex_measure(g, 1, pd.p)
    assert vm_back[0] == pytest.approx(pd.p[1], abs=1e-10)


def test_vertex_measure_lex_min_tie_break():
    # two length-1 routes 0 -> 1 (edges 0 and 1): the smaller edge id wins
    g = graphs.directed_graph(2, ((0, 1), (0, 1), (1, 0)))
    vm = graphs.vertex_measure(g, 0, (0.2, 0.5, 0.3))
    assert vm[1] == pytest.approx(0.2)


def test_vertex_measure_unreachable_warns():
    g = graphs.directed_graph(2, ((0, 0), (1, 0)))
    with pytest.warns(UserWarning):
        vm = graphs.vertex_measure(g, 0, (0.5, 0.5))
    assert vm[1] == 0.0


def test_build_graph_wavelets_validates_base():
    g = three_edge_graph()
    with pytest.raises(BaseEdgeMismatch):
        graphs.build_graph_wavelets(g, 0, 0)  # e0 ends at vertex 1, not 0
    with pytest.raises(IndexOutOfRange):
        graphs.build_graph_wavelets(g, 2, 0)


def test_coefficients_bit_compatible_with_wavelet_module():
    # the graph module must call the same complement construction, on the
    # edge matrix successors, with the edge Perron weights — bit for bit
    g = complete2_graph()
    gw = graphs.build_graph_wavelets(g, 0, 0)
    em = graphs.edge_matrix(g)
    for e in range(len(g.edges)):
        vecs = wavelets.weighted_complement_basis(gw.pd.p, em.successors[e])
        assert len(vecs) == len(gw.c[e])
        for mine, theirs in zip(gw.c[e], vecs):
            assert np.array_equal(np.asarray(mine), np.asarray(theirs))


def test_paths_from_enumeration():
    g = complete2_graph()
    gw = graphs.build_graph_wavelets(g, 0, 0)
    paths = graphs.paths_from(gw, 2)
    assert paths == [(0, 0), (0, 1), (1, 2), (1, 3)]
    assert len(graphs.paths_from(gw, 3)) == 8


def test_psi_path_values_on_loops():
    gw = graphs.build_graph_wavelets(loops3_graph(), 0, 0)
    # uniform p = 1/3: the first complement vector is (sqrt2, -1/sqrt2, -1/sqrt2)
    c1 = gw.c[0][0]
    vals = [graphs.psi_path(gw, (e,), (1,)).real for e in range(3)]
    np.testing.assert_allclose(vals, c1, atol=1e-12)
    # depth 2 multiplies coefficients along the path
    v = graphs.psi_path(gw, (1, 2), (1, 2))
    assert v == pytest.approx(gw.c[0][0][1] * gw.c[1][1][2], abs=1e-12)


def test_psi_path_validation():
    gw = graphs.build_graph_wavelets(complete2_graph(), 0, 0)
    with pytest.raises(NotComposable):
        graphs.psi_path(gw, (2, 0), (1, 1))  # edge 2 starts at vertex 1
    with pytest.raises(NotComposable):
        graphs.psi_path(gw, (1, 0), (1, 1))  # e1 ends at 1, e0 starts at 0
    with pytest.raises(LevelOutOfRange):
        graphs.psi_path(gw, (0,), (2,))  # d = 2 allows only level 1
    with pytest.raises(LevelOutOfRange):
        graphs.psi_path(gw, (0,), ())
    with pytest.raises(IndexOutOfRange):
        graphs.psi_path(gw, (9,), (1,))


def test_valid_level_tuples():
    gw = graphs.build_graph_wavelets(loops3_graph(), 0, 0)
    assert graphs.valid_level_tuples(gw, (0, 1)) == [
        (1, 1), (1, 2), (2, 1), (2, 2)]
    # a position with d = 1 empties the whole tuple set
    g = three_edge_graph()
    gw2 = graphs.build_graph_wavelets(g, 1, 2)
    assert gw2.d[2] == 2 and gw2.d[1] == 1
    assert graphs.valid_level_tuples(gw2, (1, 0)) == []


def test_path_integrals_zero_mean_and_gram():
    for g, v0, e0 in ((loops3_graph(), 0, 0), (complete2_graph(), 0, 0)):
        gw = graphs.build_graph_wavelets(g, v0, e0)
        for k in (1, 2, 3):
            rep = graphs.path_integrals(gw, k)
            assert rep.n_tuples > 0
            assert rep.max_mean_residual <= 1e-11
            assert rep.max_gram_residual <= 1e-11


def test_path_integrals_vacuous_is_visible():
    # base edge e1 into vertex 0, whose single outgoing edge e0 has d = 1:
    # there are no wavelet levels at all, and the report must say so
    g = three_edge_graph()
    gw = graphs.build_graph_wavelets(g, 0, 1)
    assert gw.d[1] == 1
    rep = graphs.path_integrals(gw, 2)
    assert rep.n_tuples == 0
    assert rep.max_mean_residual == 0.0 and rep.max_gram_residual == 0.0


def test_psi_on_vertices_unique_paths():
    # 0 -> 1 and 0 -> 2 by distinct single edges; both target vertices are
    # reached exactly once, so the vertex-indexed values are well defined
    g = graphs.directed_graph(3, ((0, 1), (0, 2), (1, 0), (2, 0)))
    gw = graphs.build_graph_wavelets(g, 0, 2)
    vals = graphs.psi_on_vertices(gw, (1,))
    assert set(vals) == {1, 2}
    assert vals[1] == pytest.approx(graphs.psi_path(gw, (0,), (1,)))
    assert vals[2] == pytest.approx(graphs.psi_path(gw, (1,), (1,)))


def test_psi_on_vertices_detects_collisions():
    gw = graphs.build_graph_wavelets(complete2_graph(), 0, 0)
    with pytest.raises(MultiplePaths):
        graphs.psi_on_vertices(gw, (1, 1))


def test_vertex_projection_relation():
    # in the edge shift, S_e* S_e = sum over edges leaving r(e) of S_e' S_e'*;
    # check it via the generic relation residual on the edge matrix
    from cantorkit import operators

    pd = graphs.graph_perron(complete2_graph())
    assert operators.ck_relations_residual(pd, 3) <= 1e-11
