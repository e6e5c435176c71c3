import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from curvgate.model_spaces import Euclidean, Product, RoundSphere, closed_form_summary
from curvgate.profiles import PrincipalCurvatureProfile, bdgg_profile, opposite_pair_profile, totally_geodesic_profile
from curvgate.verdicts import (
    AmbientSummary,
    AssertedFlags,
    Conclusion,
    Hypothesis,
    TheoremVerdict,
    abound_verdict,
    classify_nullity_sign,
    degree_special_verdict,
    gauss_codazzi_scalar,
    hodge_verdicts,
    nullity_verdict,
    spinor_term,
    spinor_verdict,
    weitzenbock_lower_bound,
)

COUNTER = PrincipalCurvatureProfile((1, 1, F(-2, 3), F(-2, 3), F(-2, 3)))


def sphere_ambient(m):
    return AmbientSummary(dim=m + 1, gamma=1, sec_bounds=(1, 1), ricci_lb=m, ricci_normal_lb=m, scalar_lb=m * (m + 1))


def by_id(verdicts):
    return {v.theorem_id: v for v in verdicts}


def test_cylinder_ambient_vanishes_with_flag():
    amb = AmbientSummary.from_summary(closed_form_summary(Product((RoundSphere(3), Euclidean(2)))))
    flags = AssertedFlags(ric_normal_somewhere_positive=True, provenance=(("ric_normal_somewhere_positive", "test"),))
    v = by_id(hodge_verdicts(amb, totally_geodesic_profile(4), 2, flags))["HodgeP1"]
    assert v.conclusion == Conclusion("Vanishing", (2, 2))
    assert any("asserted" in n for n in v.notes)
    plain = by_id(hodge_verdicts(amb, totally_geodesic_profile(4), 2))["HodgeP1"]
    assert plain.conclusion.kind == "ConstantLength"


@pytest.mark.parametrize("p", [2, 6])
def test_bdgg_in_euclidean_space(p):
    amb = AmbientSummary.from_summary(closed_form_summary(Euclidean(9)))
    v = by_id(hodge_verdicts(amb, bdgg_profile(4), p))
    assert v["HodgeP1"].conclusion == Conclusion("Vanishing", (2, 6))
    assert v["HodgeP2"].conclusion.kind == "NotApplicable"  # flat ambient is not pinched
    assert not by_id(hodge_verdicts(amb, bdgg_profile(4), 3))["HodgeP1"].applies


def test_pinched_pt3_with_failing_condition():
    amb = AmbientSummary(dim=7, sec_bounds=(1, 4))
    prof = PrincipalCurvatureProfile((1, 1, F(-2, 3), F(-2, 3), F(-2, 3), 0))
    v = by_id(hodge_verdicts(amb, prof, 2))["HodgeP3"]
    assert v.hypothesis("b <= c_m a").passed and v.hypothesis("b <= c_m a").margin == F(9, 4)
    assert v.conclusion.kind == "NotApplicable"
    ok = by_id(hodge_verdicts(amb, opposite_pair_profile(6), 2))["HodgeP3"]
    assert ok.conclusion == Conclusion("Vanishing", (2, 4))


def test_pt2_pinching_margin():
    amb = AmbientSummary(dim=7, sec_bounds=(1, F(37, 16)))
    v = by_id(hodge_verdicts(amb, opposite_pair_profile(6), 2))["HodgeP2"]
    assert v.hypothesis("b <= epsilon_{m,p} a").margin == 0
    assert v.applies
    small = AmbientSummary(dim=6, sec_bounds=(1, 1))
    v = by_id(hodge_verdicts(small, opposite_pair_profile(5), 2))["HodgeP2"]
    assert not v.hypothesis("m >= 6").passed and not v.applies


def test_cmc_profiles_use_cmc_ids():
    amb = sphere_ambient(6)
    prof = PrincipalCurvatureProfile((1, 1, 1, 1, 1, 1))
    ids = [v.theorem_id for v in hodge_verdicts(amb, prof, 2)]
    assert ids == ["CMC-P1", "CMC-P2", "CMC-P3"]
    assert all(v.applies for v in hodge_verdicts(amb, prof, 2))


def test_degree_guards():
    amb = sphere_ambient(6)
    with pytest.raises(ValueError):
        hodge_verdicts(amb, opposite_pair_profile(6), 1)
    with pytest.raises(ValueError):
        hodge_verdicts(amb, opposite_pair_profile(5), 2)
    assert degree_special_verdict(6, 0, AssertedFlags(infinite_volume=True)).conclusion == Conclusion("Vanishing", (0, 6))
    assert not degree_special_verdict(6, 6).applies
    assert degree_special_verdict(6, 5).theorem_id == "Degree1"


def test_abound_examples():
    six = PrincipalCurvatureProfile((F(3, 2), 1, -2, F(-1, 2), 0, 0))
    assert six.normA2 == F(15, 2)
    v = abound_verdict(sphere_ambient(6), six, 3)
    assert v.conclusion == Conclusion("Vanishing", (3, 3))
    assert v.hypotheses[-1].margin == 0
    nine = PrincipalCurvatureProfile((-2, F(-3, 2), F(1, 2), F(2, 3), F(7, 6), F(7, 6), 0, 0, 0))
    assert nine.normA2 == F(29, 3) and nine.is_minimal
    v = abound_verdict(sphere_ambient(9), nine, 4)
    assert v.applies and v.hypotheses[-1].margin == 0
    v = abound_verdict(sphere_ambient(6), PrincipalCurvatureProfile((2, -2, 1, -1, 0, 0)), 3)
    assert v.hypotheses[-1].margin == F(15, 2) - 10 and not v.applies


def test_abound_threshold_plus_one():
    prof = PrincipalCurvatureProfile((F(3, 2), 1, -2, F(-1, 2), 0, 0))
    # threshold (9 gamma + b)/2 = 13/2 = |A|^2 - 1
    amb = AmbientSummary(dim=7, gamma=F(1, 2), ricci_lb=F(17, 2))
    v = abound_verdict(amb, prof, 3)
    assert v.hypotheses[-1].margin == -1 and not v.applies


def test_spinor():
    assert spinor_term(0, totally_geodesic_profile(4)) == 0
    v = spinor_verdict(0, totally_geodesic_profile(4))
    assert v.conclusion == Conclusion("ConstantLength", (), 4)
    assert spinor_verdict(0, totally_geodesic_profile(5)).conclusion.rank_bound == 4
    assert spinor_verdict(F(1, 4), totally_geodesic_profile(4)).conclusion.kind == "Vanishing"
    assert spinor_verdict(0, totally_geodesic_profile(4), AssertedFlags(infinite_volume=True)).conclusion.kind == "Vanishing"
    assert not spinor_verdict(-1, totally_geodesic_profile(4)).applies
    assert not spinor_verdict(None, totally_geodesic_profile(4)).applies
    cmc = spinor_verdict(-1, PrincipalCurvatureProfile((1, 1)))
    assert cmc.theorem_id == "CMC-Spin" and cmc.applies


def test_nullity():
    assert classify_nullity_sign(ric_normal_lb=0) == "NonnegEverywhere"
    assert classify_nullity_sign(ric_normal_lb=-4, ric_normal_ub=-4, normA2_ub=4) == "NonposEverywhere"
    assert classify_nullity_sign(ric_normal_lb=-4, ric_normal_ub=-4, normA2_ub=5) == "Mixed"
    assert nullity_verdict("NonnegEverywhere").conclusion.kind == "NullityIn01"
    assert nullity_verdict("NonposEverywhere").conclusion.kind == "NullityIn01"
    assert nullity_verdict("Mixed").conclusion.kind == "NotApplicable"
    with pytest.raises(ValueError):
        nullity_verdict("Sometimes")


def test_gauss_codazzi():
    assert gauss_codazzi_scalar(0, totally_geodesic_profile(3), 5) == -10
    assert gauss_codazzi_scalar(0, COUNTER, 0) == -F(10, 3)
    # unit S^2 in R^3: k = (1, 1), H^2 = 4, |A|^2 = 2
    assert gauss_codazzi_scalar(0, PrincipalCurvatureProfile((1, 1)), 0) == 2


def test_weitzenbock_bound():
    assert weitzenbock_lower_bound(5, 2, 0, 0, COUNTER) == F(-2, 3)
    assert weitzenbock_lower_bound(6, 2, 1, 6, totally_geodesic_profile(6)) == 14
    assert weitzenbock_lower_bound(6, 2, 0, 0, opposite_pair_profile(6)) >= 0
    with pytest.raises(ValueError):
        weitzenbock_lower_bound(6, 2, 0, 0, COUNTER)


def test_verdict_invariant_enforced():
    with pytest.raises(ValueError):
        TheoremVerdict("HodgeP1", [Hypothesis("x", False, F(-1))], Conclusion("Vanishing", (2, 4)))
    with pytest.raises(ValueError):
        TheoremVerdict("Bogus", [], Conclusion("NotApplicable"))
    with pytest.raises(ValueError):
        Conclusion("Maybe")


def test_json_shape():
    v = abound_verdict(sphere_ambient(6), PrincipalCurvatureProfile((F(3, 2), 1, -2, F(-1, 2), 0, 0)), 3)
    d = json.loads(json.dumps(v.to_dict()))
    assert set(d) == {"theorem_id", "hypotheses", "conclusion", "notes"}
    h = d["hypotheses"][-1]
    assert h["pass"] is True and h["margin_num"] == "0" and h["margin_den"] == "1"
    fl = spinor_verdict(0.5, PrincipalCurvatureProfile((0.25, -0.25))).to_dict()
    assert "margin_float" in fl["hypotheses"][-1]


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=8)


@st.composite
def ambient_and_profile(draw):
    m = draw(st.integers(4, 9))
    k = draw(st.lists(rationals, min_size=m, max_size=m))
    if draw(st.booleans()):
        k[-1] = -sum(k[:-1], F(0))
    a = draw(st.fractions(min_value=F(1, 4), max_value=2, max_denominator=6))
    b = a * draw(st.fractions(min_value=1, max_value=8, max_denominator=6))
    amb = AmbientSummary(dim=m + 1, gamma=draw(rationals), sec_bounds=(a, b),
                         ricci_lb=draw(rationals), ricci_normal_lb=draw(rationals), scalar_lb=draw(rationals))
    return amb, PrincipalCurvatureProfile(tuple(k))


@given(ambient_and_profile(), st.sampled_from([2, 3, 4]), st.booleans())
def test_duality_and_round_trip(data, p, flag):
    amb, prof = data
    m = prof.dim
    if p > m - 2:
        return
    flags = AssertedFlags(not_totally_geodesic=flag)
    left = hodge_verdicts(amb, prof, p, flags)
    right = hodge_verdicts(amb, prof, m - p, flags)
    assert [v.conclusion for v in left] == [v.conclusion for v in right]
    verdicts = left + [abound_verdict(amb, prof, p, flags), spinor_verdict(amb.scalar_lb, prof, flags)]
    for v in verdicts:
        if v.applies:
            assert all(h.passed for h in v.hypotheses)
        for h in v.hypotheses:
            if h.passed and h.margin is not None:
                assert h.margin > 0 if h.strict else h.margin >= 0
        assert TheoremVerdict.from_dict(json.loads(json.dumps(v.to_dict()))) == v
    assert AmbientSummary.from_dict(json.loads(json.dumps(amb.to_dict()))) == amb
