import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from curvgate import jets
from curvgate.eigen import group_eigenvalues, sym_eigenvalues
from curvgate.errors import ConvergenceError


def test_jet_product_rule_and_hessian():
    x, y = jets.Jet.variables([2.0, 3.0])
    f = x * x * y + jets.sin(y) / x
    assert f.value == pytest.approx(12 + math.sin(3) / 2)
    assert f.grad[0] == pytest.approx(2 * 2 * 3 - math.sin(3) / 4)
    assert f.grad[1] == pytest.approx(4 + math.cos(3) / 2)
    # d2f/dxdy = 2x - cos(y)/x^2
    assert f.hess[0, 1] == pytest.approx(4 - math.cos(3) / 4)
    assert f.hess[1, 0] == pytest.approx(f.hess[0, 1])
    assert f.hess[0, 0] == pytest.approx(2 * 3 + 2 * math.sin(3) / 8)


def test_jet_functions_match_finite_differences():
    def f(v):
        return jets.exp(v[0]) * jets.sqrt(v[1]) + jets.log(v[1]) * jets.cos(v[0]) + v[0] ** 3

    p = np.array([0.3, 1.7])
    jet = f(jets.Jet.variables(p))
    h = 1e-4
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        fd = (f(p + e) - f(p - e)) / (2 * h)
        assert jet.grad[i] == pytest.approx(fd, rel=1e-7)
        for j in range(2):
            e2 = np.zeros(2)
            e2[j] = h
            fd2 = (f(p + e + e2) - f(p + e - e2) - f(p - e + e2) + f(p - e - e2)) / (4 * h * h)
            assert jet.hess[i, j] == pytest.approx(fd2, rel=1e-5, abs=1e-6)


def test_jet_reciprocal_and_rdiv():
    (x,) = jets.Jet.variables([4.0])
    r = 1 / x
    assert r.value == 0.25
    assert r.grad[0] == pytest.approx(-1 / 16)
    assert r.hess[0, 0] == pytest.approx(2 / 64)


def test_unpack_shapes():
    x = jets.Jet.variables([1.0, 2.0])
    g, dg, ddg = jets.unpack([[x[0] * x[1], 0.0], [0.0, 1.0]], 2)
    assert g[0, 0] == 2.0
    assert dg.shape == (2, 2, 2) and ddg.shape == (2, 2, 2, 2)
    assert dg[0, 0, 0] == 2.0 and dg[1, 0, 0] == 1.0
    assert ddg[0, 1, 0, 0] == 1.0


def test_eigen_examples():
    assert sym_eigenvalues(np.eye(3)) == [1.0, 1.0, 1.0]
    assert sym_eigenvalues(np.diag([3.0, 1.0, 2.0])) == [1.0, 2.0, 3.0]


def test_eigen_rejects_asymmetric():
    with pytest.raises(ValueError):
        sym_eigenvalues([[1.0, 2.0], [0.0, 1.0]])


def test_eigen_reports_nonconvergence():
    a = np.random.default_rng(1).normal(size=(6, 6))
    with pytest.raises(ConvergenceError):
        sym_eigenvalues(a + a.T, max_sweeps=0)


@given(st.integers(min_value=1, max_value=9), st.integers(min_value=0, max_value=2**32 - 1))
def test_eigen_matches_numpy_and_preserves_invariants(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    vals = np.array(sym_eigenvalues(a))
    assert np.all(np.diff(vals) >= 0)
    np.testing.assert_allclose(vals, np.linalg.eigvalsh(a), atol=1e-9)
    assert vals.sum() == pytest.approx(np.trace(a), rel=1e-9, abs=1e-9)
    assert np.sqrt(np.sum(vals ** 2)) == pytest.approx(np.linalg.norm(a), rel=1e-9)


def test_group_eigenvalues():
    assert group_eigenvalues([0.5, 1.5, 0.5 + 1e-9, 3.5]) == [(pytest.approx(0.5), 2), (1.5, 1), (3.5, 1)]
