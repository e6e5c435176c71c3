from fractions import Fraction as F

import pytest

from curvgate import constants as C
from curvgate.berger import (
    berger_gate_verdicts,
    berger_sphere_verdicts,
    figure1_data,
    figure1_row,
    nonneg_region,
    pinching_region,
    printed_two_form_lower,
)
from curvgate.model_spaces import Affine, BergerSphere, berger_forms
from curvgate.profiles import PrincipalCurvatureProfile, bdgg_profile, opposite_pair_profile


def test_pinching_region_simple():
    forms = [Affine(F(0), F(1)), Affine(F(4), F(-3)), Affine(F(1), F(0))]
    # ratio 1 only admits the round point
    assert pinching_region(forms, 1) == [(F(1), F(1))]
    assert pinching_region(forms, 2) == [(F(4, 5), F(8, 7))]
    assert nonneg_region(forms) == (F(0), F(4, 3))
    assert nonneg_region([Affine(F(-1), F(0))]) is None


@pytest.mark.parametrize("n", range(2, 33))
def test_thresholds_are_the_boundary_solutions(n):
    # independent characterisation: each bound solves its defining equation
    t = berger_sphere_verdicts(n).components
    eps, c = C.epsilon_formula(2 * n, n), C.c_formula(2 * n)
    assert t["epsilon_upper"] == eps * (4 - 3 * t["epsilon_upper"])
    assert 4 - 3 * t["two_form_lower"] == c * t["two_form_lower"]
    assert t["two_form_upper"] == c * (4 - 3 * t["two_form_upper"])
    assert 2 * n + 2 - (2 * n + 1) * t["nonneg_operator_upper"] == 0
    assert berger_forms(n).scalar(t["spinor_upper"]) == 0


def test_n2_spinor_bound():
    th = berger_sphere_verdicts(2)
    assert th.spinor_range == (0, 6)


def test_crossover():
    for n in range(2, 33):
        t = berger_sphere_verdicts(n).components
        lhs, rhs = t["nonneg_operator_upper"], t["epsilon_upper"]
        assert (lhs <= rhs) == (n <= 6)
        assert (lhs == rhs) == (n == 6)
    assert berger_sphere_verdicts(6).forms_range == (0, F(14, 13))


def test_typo_note():
    th = berger_sphere_verdicts(4)
    assert th.components["two_form_lower"] == F(4, 9)
    assert printed_two_form_lower(4) == F(12, 61)
    assert any("17m-14" in note for note in th.notes)


def test_degree_specific_ranges_are_wider():
    th = berger_sphere_verdicts(5)
    for p in range(2, 6):
        assert th.forms_range_by_degree[p][1] >= th.forms_range[1]
    assert th.forms_range_by_degree[5] == th.forms_range


def test_figure1_rows():
    row6 = dict(figure1_row(6))
    assert row6["R>=0"] == row6["eps-pinching"] == F(14, 13)
    row3 = dict(figure1_row(3))
    assert row3["R>=0"] == F(8, 7) < row3["eps-pinching"] == F(108, 93)
    row7 = dict(figure1_row(7))
    assert row7["R>=0"] == F(16, 15) > row7["eps-pinching"] == F(444, 417)
    assert dict(figure1_row(2))["s>=0"] == 6
    values = [v for _, v in figure1_row(9)]
    assert values == sorted(values)


def test_figure1_ordering_property():
    data = figure1_data(range(2, 65))
    for n, rel in data.relation.items():
        if n > 6:
            assert rel == "same"
        elif n == 6:
            assert rel == "tie(R>=0,eps-pinching)"
        else:
            assert rel == "swap(R>=0,eps-pinching)"
    assert data.order(5) != data.order(7)
    with pytest.raises(ValueError):
        figure1_data([1, 3])


def test_gate_verdicts():
    v = {x.theorem_id: x for x in berger_gate_verdicts(BergerSphere(3, 1), bdgg_profile(3), 2)}
    assert v["BergerSphere1"].applies
    assert str(v["BergerSphere2"].conclusion) == "Vanishing(2, 4)"
    assert v["BergerSphere3"].applies
    v = {x.theorem_id: x for x in berger_gate_verdicts(BergerSphere(3, F(3, 2)), opposite_pair_profile(6), 2)}
    assert not v["BergerSphere2"].applies and not v["BergerSphere3"].applies
    assert v["BergerSphere2"].hypothesis("delta <= forms threshold").margin < 0
    v = {x.theorem_id: x for x in berger_gate_verdicts(BergerSphere(2, 7))}
    assert not v["BergerSphere1"].applies
    assert not v["BergerSphere2"].applies  # no profile supplied
    bad = PrincipalCurvatureProfile((1, 1, F(-2, 3), F(-2, 3), F(-2, 3), 0))
    v = {x.theorem_id: x for x in berger_gate_verdicts(BergerSphere(3, 1), bad, 2)}
    assert not v["BergerSphere3"].applies
