from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from curvgate.errors import SpecParseError
from curvgate.model_spaces import BergerSphere, Euclidean, FubiniStudyCP, Product, RoundSphere
from curvgate.spec_text import format_spec, parse_spec


@pytest.mark.parametrize("text,spec", [
    ("S3(r=1)xR2", Product((RoundSphere(3), Euclidean(2)))),
    ("Berger(n=3,delta=1.1)", BergerSphere(3, F(11, 10))),
    ("CP2xR2", Product((FubiniStudyCP(2), Euclidean(2)))),
    ("E4", Euclidean(4)),
    ("R3", Euclidean(3)),
    ("S2xS2", Product((RoundSphere(2), RoundSphere(2)))),
    ("S4(r=2)", RoundSphere(4, 2)),
    ("CP1(scale=1/2)", FubiniStudyCP(1, F(1, 2))),
])
def test_parse(text, spec):
    assert parse_spec(text) == spec


@pytest.mark.parametrize("text,token,position", [
    ("S3(r=1)xQ2", "Q2", 8),
    ("S3(q=1)", "q", 3),
    ("S3(r=abc)", "abc", 5),
    ("S3xx", "", 3),
    ("", "", 0),
    ("S3 xR2", " ", 2),
    ("Berger(n=2)", "Berger(n=2)", 0),
    ("S3(r=1", "(", 2),
    ("S3)", ")", 2),
    ("Bergerx", "Berger", 0),
    ("S", "S", 0),
    ("S2(r=-1)", "S2(r=-1)", 0),
])
def test_errors_name_token(text, token, position):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert info.value.token == token
    assert info.value.position == position
    assert repr(token) in str(info.value)


factor = st.one_of(
    st.builds(Euclidean, st.integers(1, 6)),
    st.builds(RoundSphere, st.integers(2, 6), st.fractions(min_value=F(1, 4), max_value=4, max_denominator=5)),
    st.builds(BergerSphere, st.integers(2, 4), st.fractions(min_value=F(1, 5), max_value=3, max_denominator=7)),
    st.builds(FubiniStudyCP, st.integers(1, 3), st.fractions(min_value=F(1, 4), max_value=4, max_denominator=5)),
)


@given(st.lists(factor, min_size=1, max_size=4))
def test_round_trip(factors):
    spec = factors[0] if len(factors) == 1 else Product(tuple(factors))
    assert parse_spec(format_spec(spec)) == spec
