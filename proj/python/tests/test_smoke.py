import math

import pytest

import bhdist as bd


def test_graph_from_edges():
    g = bd.Graph.from_edges([(0, 1), (1, 0), (1, 1)])
    assert (g.num_nodes, g.num_edges) == (2, 1)
    tri = bd.Graph.from_text("0 1\n1 2\n2 0\n")
    assert tri.degrees() == [2, 2, 2]
    assert not tri.bipartite
    assert bd.Graph.from_text(tri.to_text()) == tri


def test_original_ids():
    g = bd.Graph.from_edges([(10, 20)])
    assert g.find(20) == 1
    assert g.original_id(0) == 10
    assert g.find(15) is None


def test_parse_error_carries_line():
    with pytest.raises(bd.DataError, match="line 2"):
        bd.Graph.from_text("0 1\n1 x\n")


def test_exact_values():
    oracle = bd.DenseOracle(bd.complete(3))
    assert oracle.pair(0, 1) == pytest.approx(2 / 9)
    assert oracle.nodal(0) == pytest.approx(4 / 9)
    path = bd.DenseOracle(bd.path(3))
    assert path.pair(0, 2) == pytest.approx(2.0)
    with pytest.raises(bd.ParameterError):
        oracle.pair(1, 1)


def test_spectral_and_lengths():
    k3 = bd.complete(3)
    assert bd.estimate_lambda(k3) == pytest.approx(0.505, rel=1e-5)
    sp = bd.estimate_spectral(k3, with_gamma2=True)
    assert sp.gamma2 == pytest.approx(3.0, rel=1e-5)
    assert sp.phi == pytest.approx(2 / 9, rel=1e-5)
    assert bd.universal_length(3, 0.5, 0.1) == 11
    assert bd.pairwise_length(k3, 0, 1, 0.5, 0.1) == 13
    assert bd.truncated(k3, 0, 1, 1) == pytest.approx(0.5)


def test_pair_queries():
    g = bd.erdos_renyi(30, 0.2, seed=3)
    sp = bd.estimate_spectral(g)
    truth = bd.DenseOracle(g).pair(0, 5)
    for fn in (bd.push, bd.push_plus):
        est = fn(g, sp, 0, 5, 0.01)
        assert abs(est.value - truth) <= 0.01
    a = bd.swf(g, sp, 0, 5, 0.2, seed=7, max_samples=5000)
    b = bd.swf(g, sp, 0, 5, 0.2, seed=7, max_samples=5000)
    assert (a.value, a.work) == (b.value, b.work)
    assert a.method == "swf"
    s = bd.stw(g, sp, 0, 5, 0.2, max_samples=500)
    assert s.work == 500 and s.capped


def test_nodal_queries():
    k3 = bd.complete(3)
    sp = bd.estimate_spectral(k3, with_gamma2=True)
    e = bd.snb(k3, sp, 0, 0.1, seed=2)
    assert e.pairs_evaluated == 2
    assert abs(e.value - 4 / 9) <= 3 * 0.1
    plus = bd.snb_plus(k3, sp, 0, 0.2, seed=2)
    assert plus.sampling_probability == 1.0
    assert plus.value == e.value


def test_bernoulli_subset():
    assert bd.bernoulli_subset(5, 1.0, seed=0, exclude=2) == [0, 1, 3, 4]
    assert bd.bernoulli_subset(100, 0.3, seed=4) == bd.bernoulli_subset(100, 0.3, seed=4)


def test_walkable_required():
    sp = bd.make_spectral(0.5, 1.0)
    with pytest.raises(bd.DataError):
        bd.push(bd.path(3), sp, 0, 2, 0.1)
    assert math.isclose(bd.DenseOracle(bd.path(3)).pair(0, 1), 2 / 3)
