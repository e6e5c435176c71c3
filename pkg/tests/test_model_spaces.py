from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from curvgate.model_spaces import (
    NUMERIC_ONLY,
    BergerSphere,
    CurvatureSummary,
    Euclidean,
    FubiniStudyCP,
    Product,
    RoundSphere,
    berger_forms,
    chart,
    closed_form_summary,
    compare_numeric,
    product_spectrum,
)
from curvgate.tensor_core import curvature_report


def test_berger_summary_example():
    s = closed_form_summary(BergerSphere(2, F(1, 2)))
    assert s.spectrum == ((F(1, 2), 6), (F(3, 2), 3), (F(7, 2), 1))
    assert s.ricci == ((F(2), 1), (F(5), 4))
    assert s.scalar == 22
    assert (s.sec_min, s.sec_max) == (F(1, 2), F(5, 2))
    assert s.gamma == F(1, 2)


def test_berger_round_case_collapses():
    for n in (2, 3, 4):
        s = closed_form_summary(BergerSphere(n, 1))
        assert s.spectrum == ((F(1), n * (2 * n + 1)),)
        assert s.ricci == ((F(2 * n), 2 * n + 1),)


def test_berger_zero_eigenvalue_at_threshold():
    for n in range(2, 10):
        s = closed_form_summary(BergerSphere(n, F(2 * n + 2, 2 * n + 1)))
        assert s.gamma == 0


def test_berger_flags():
    assert closed_form_summary(BergerSphere(2, F(6, 5))).flags == ()
    flags = closed_form_summary(BergerSphere(2, F(3, 2))).flags
    assert any("4/3" in f for f in flags) and len(flags) == 2


@pytest.mark.parametrize("n", range(2, 30))
def test_berger_identities_exact(n):
    forms = berger_forms(n)
    assert n * (n + 1) + (n * n - 1) + 1 == n * (2 * n + 1)
    assert sum(k for _, k in forms.spectrum) == n * (2 * n + 1)
    for d in (F(1, 3), F(1), F(7, 5), F(9)):
        ric = sum(f(d) * k for f, k in forms.ricci)
        assert ric == forms.scalar(d) == 2 * n * (2 * n + 2 - d)


@pytest.mark.parametrize("n", range(2, 12))
def test_berger_sign_thresholds(n):
    def check(value_at, threshold):
        assert value_at(threshold - F(1, 1000)) > 0
        assert value_at(threshold) == 0
        assert value_at(threshold + F(1, 1000)) < 0

    forms = berger_forms(n)
    check(lambda d: min(f(d) for f, _ in forms.spectrum), F(2 * n + 2, 2 * n + 1))
    check(lambda d: min(f(d) for _, f in forms.sectional), F(4, 3))
    check(lambda d: min(f(d) for f, _ in forms.ricci), F(n + 1))
    check(forms.scalar, F(2 * n + 2))


def test_sphere_and_euclidean():
    s = closed_form_summary(RoundSphere(4, 2))
    assert s.spectrum == ((F(1, 4), 6),) and s.scalar == 3 and s.gamma == F(1, 4)
    e = closed_form_summary(Euclidean(4))
    assert e.spectrum == ((F(0), 6),) and e.scalar == 0 and e.ricci == ((F(0), 4),)
    np.testing.assert_array_equal(chart(Euclidean(4)).evaluate(chart(Euclidean(4)).point(1, 2, 3, 4)), np.eye(4))


@pytest.mark.parametrize("spec,expected", [
    (Product((RoundSphere(3), Euclidean(2))), ((F(0), 7), (F(1), 3))),
    (Product((RoundSphere(2), RoundSphere(2))), ((F(0), 4), (F(1), 2))),
    (Product((RoundSphere(2), Euclidean(3))), ((F(0), 9), (F(1), 1))),
    (RoundSphere(5), ((F(1), 10),)),
])
def test_product_spectra(spec, expected):
    assert closed_form_summary(spec).spectrum == expected


def test_product_summary_fields():
    s = closed_form_summary(Product((RoundSphere(2), Euclidean(3))))
    assert (s.sec_min, s.sec_max, s.scalar, s.gamma) == (0, 1, 2, 0)
    nested = Product((Product((RoundSphere(2),)), Euclidean(3)))
    assert nested.dim == 5 and len(nested.factors) == 2


def test_cp_is_numeric_only():
    s = closed_form_summary(FubiniStudyCP(2))
    assert s.spectrum is None and s.spectrum_label == NUMERIC_ONLY
    assert s.scalar == pytest.approx(24.0)
    assert product_spectrum([s, closed_form_summary(Euclidean(2))]) is None
    metric = chart(FubiniStudyCP(2))
    for p in metric.sample_points(5, seed=0):
        assert min(curvature_report(metric, p).operator_eigenvalues) >= -1e-8


def test_summary_validates_multiplicities():
    with pytest.raises(ValueError):
        CurvatureSummary(3, 0, 0, ((F(0), 2),), ((F(0), 3),), F(0), F(0))
    with pytest.raises(ValueError):
        CurvatureSummary(3, 0, 0, ((F(0), 3),), ((F(0), 2),), F(0), F(0))


def test_spec_validation():
    for bad in (lambda: BergerSphere(1, 1), lambda: BergerSphere(2, 0),
                lambda: RoundSphere(2, -1), lambda: Euclidean(0), lambda: FubiniStudyCP(2, 0)):
        with pytest.raises(ValueError):
            bad()


@pytest.mark.parametrize("spec", [
    BergerSphere(2, 1), BergerSphere(2, F(6, 5)), BergerSphere(3, F(3, 2)),
    RoundSphere(3, F(1, 2)), Product((RoundSphere(2), RoundSphere(3, 2))), Product((FubiniStudyCP(1), Euclidean(2))),
], ids=str)
def test_numeric_matches_closed_form(spec):
    cmp = compare_numeric(spec, points=20, seed=0)
    assert cmp.max_deviation <= 1e-6
    assert cmp.max_symmetry_residual <= 1e-8


@given(st.lists(st.sampled_from(["S2", "S3", "R1", "R2", "S2r2"]), min_size=1, max_size=3))
def test_product_spectrum_multiplicities(names):
    table = {"S2": RoundSphere(2), "S3": RoundSphere(3), "R1": Euclidean(1), "R2": Euclidean(2),
             "S2r2": RoundSphere(2, 2)}
    spec = Product(tuple(table[n] for n in names))
    s = closed_form_summary(spec)
    d = spec.dim
    assert sum(k for _, k in s.spectrum) == d * (d - 1) // 2
    assert sum(v * k for v, k in s.ricci) == s.scalar
    if d >= 2:
        assert s.gamma == min(v for v, _ in s.spectrum)
