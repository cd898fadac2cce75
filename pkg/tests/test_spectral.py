import math
from fractions import Fraction

import numpy as np
import pytest

from specgap.graphs import (
    complete_bipartite,
    complete_graph,
    disjoint_union,
    petersen_graph,
)
from specgap.rand import make_rng
from specgap.sampling import sample_simple_regular
from specgap.spectral import (
    adjacency_matrix,
    cheeger_exact,
    cheeger_sandwich_check,
    cheeger_upper,
    eigen_summary,
    friedman_check,
    walk_sum_bound_check,
)


def test_k4_spectrum():
    s = eigen_summary(complete_graph(4))
    assert s.lambda1 == pytest.approx(3.0)
    assert s.lambda2 == pytest.approx(-1.0)
    assert s.lam == pytest.approx(1.0)
    assert np.allclose(s.eigenvalues, [-1, -1, -1, 3], atol=1e-9)


def test_petersen_spectrum():
    s = eigen_summary(petersen_graph())
    evals = np.array(s.eigenvalues)
    assert s.lambda2 == pytest.approx(1.0)
    assert s.lam == pytest.approx(2.0)
    assert np.sum(np.isclose(evals, 1.0, atol=1e-9)) == 5
    assert np.sum(np.isclose(evals, -2.0, atol=1e-9)) == 4


def test_k33_bipartite_lam_is_d():
    s = eigen_summary(complete_bipartite(3, 3))
    assert s.lam == pytest.approx(3.0)
    assert s.lambda2 == pytest.approx(0.0, abs=1e-9)


def test_spectrum_invariants_on_random_graphs():
    rng = make_rng(2)
    for seed in range(5):
        g, _ = sample_simple_regular(30, 3, make_rng(100 + seed))
        s = eigen_summary(g)
        evals = np.array(s.eigenvalues)
        assert abs(evals.sum()) <= 1e-6 * g.n  # traceless
        assert np.sum(evals**2) == pytest.approx(g.n * g.d, rel=1e-6)
        assert np.all(np.abs(evals) <= g.d + 1e-9)


def test_iterative_agrees_with_dense():
    g, _ = sample_simple_regular(400, 3, make_rng(8))
    dense = eigen_summary(g)
    import specgap.spectral as spectral

    old = spectral.DENSE_LIMIT
    spectral.DENSE_LIMIT = 100
    try:
        it = eigen_summary(g, tol=1e-8)
    finally:
        spectral.DENSE_LIMIT = old
    assert it.mode == "iterative"
    assert it.lambda2 == pytest.approx(dense.lambda2, abs=1e-7)
    assert it.lam == pytest.approx(dense.lam, abs=1e-7)


def test_cheeger_k4():
    res = cheeger_exact(complete_graph(4))
    assert res.value == Fraction(2)
    assert len(res.witness) == 2


def test_cheeger_petersen():
    res = cheeger_exact(petersen_graph())
    assert res.value == Fraction(1)
    assert len(res.witness) == 5


def test_cheeger_disconnected_zero():
    g = disjoint_union(complete_graph(4), complete_graph(4))
    res = cheeger_exact(g)
    assert res.value == 0


def test_cheeger_exact_size_cutoff_message():
    g, _ = sample_simple_regular(30, 3, make_rng(5))
    with pytest.raises(ValueError, match="cheeger_upper"):
        cheeger_exact(g)


def test_cheeger_upper_is_upper_bound():
    for seed in range(3):
        g, _ = sample_simple_regular(14, 3, make_rng(seed))
        exact = cheeger_exact(g)
        ub = cheeger_upper(g)
        assert ub.value >= exact.value
        assert not ub.exact


def test_cheeger_sandwich_named_graphs():
    r4 = cheeger_sandwich_check(complete_graph(4))
    assert r4["h"] == 2 and r4["ok"]
    assert r4["lower"] == pytest.approx(2.0)
    assert r4["upper"] == pytest.approx(math.sqrt(24.0))
    rp = cheeger_sandwich_check(petersen_graph())
    assert rp["h"] == 1 and rp["ok"]
    assert rp["upper"] == pytest.approx(math.sqrt(12.0))


def test_cheeger_sandwich_random_g12():
    for seed in range(10):
        g, _ = sample_simple_regular(12, 3, make_rng(200 + seed))
        assert cheeger_sandwich_check(g)["ok"]


def test_friedman_check_k33_and_k4():
    r = friedman_check(complete_bipartite(3, 3), slack=0.1)
    assert r.lam == pytest.approx(3.0)
    assert not r.passed  # 3 > 2 sqrt 2 + 0.1
    assert not r.passed_21  # 3 > 2.1 sqrt 2 ~ 2.970
    r4 = friedman_check(complete_graph(4))
    assert r4.passed_21  # 1 <= 2.1 sqrt 2


def test_walk_sum_bound_k4():
    g = complete_graph(4)
    y = np.array([1.0, -1.0, 0.0, 0.0]) / math.sqrt(2)
    rep = walk_sum_bound_check(g, y, 1)
    # A y = -y on mean-zero vectors of K4
    assert rep["value"] == pytest.approx(1.0)
    assert rep["bound"] == pytest.approx(4 * 4.41 * 2)
    assert rep["ok"]


def test_walk_sum_bound_petersen_eigenvector():
    g = petersen_graph()
    a = adjacency_matrix(g)
    vals, vecs = np.linalg.eigh(a)
    y = vecs[:, -2]  # eigenvalue 1, mean-zero by orthogonality to 1-vector
    rep = walk_sum_bound_check(g, y, 3)
    assert rep["ok"]
    assert rep["value"] == pytest.approx(9.0, rel=1e-9)  # (1+1+1)^2


def test_walk_sum_preconditions():
    g = complete_graph(4)
    with pytest.raises(ValueError, match="unit"):
        walk_sum_bound_check(g, np.array([1.0, -1.0, 0.0, 0.0]), 1)
    with pytest.raises(ValueError, match="zero mean"):
        walk_sum_bound_check(g, np.array([1.0, 0, 0, 0]), 1)
    with pytest.raises(ValueError, match="2.1"):
        y = np.zeros(6)
        y[0], y[3] = 1 / math.sqrt(2), -1 / math.sqrt(2)
        walk_sum_bound_check(complete_bipartite(3, 3), y, 1)
