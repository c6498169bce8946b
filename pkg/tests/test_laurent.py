from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chowq.errors import DimensionMismatch, ParseError
from chowq.laurent import LaurentPoly

names = ("T0", "T1", "S1")
exps = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple)
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(st.tuples(exps, coefs), max_size=5).map(lambda t: LaurentPoly(names, t))


def test_terms_are_combined_and_ordered():
    g = LaurentPoly(("x", "y"), [((0, 1), 1), ((1, 0), 2), ((0, 1), -1), ((2, 0), Fraction(1, 2))])
    assert g.items() == (((2, 0), Fraction(1, 2)), ((1, 0), Fraction(2)))
    with pytest.raises(DimensionMismatch):
        LaurentPoly(("x",), [((1, 2), 1)])


def test_monomial_free():
    g = LaurentPoly(("x", "y"), [((2, -1), 1), ((1, 0), 1)])
    h, shift = g.monomial_free()
    assert shift == (-1, 1)
    assert h == LaurentPoly(("x", "y"), [((1, 0), 1), ((0, 1), 1)])
    assert h.is_monomial_free() and not g.is_monomial_free()


def test_substitutions():
    g = LaurentPoly.parse("T0*T1*S1^2 + T2*T3*S1 + T4*T5 + T6^2")
    assert g.set_to_one([g.vars.index("S1")]) == LaurentPoly.parse("T0*T1 + T2*T3 + T4*T5 + T6^2")
    assert g.set_to_zero(g.vars.index("S1")) == LaurentPoly.parse("T4*T5 + T6^2", g.vars)


def test_text_rendering():
    g = LaurentPoly.parse("T0*T1*S1^2 + T2*T3*S1 + T4*T5 + T6^2", ["T0", "T1", "T2", "T3", "T4", "T5", "T6", "S1"])
    assert g.to_text() == "T0·T1·S1² + T2·T3·S1 + T4·T5 + T6²"
    assert LaurentPoly(("x",), [((-1,), Fraction(-3, 2))]).to_text() == "-3/2·x⁻¹"
    assert LaurentPoly(("x",), []).to_text() == "0"


def test_parse_errors():
    for bad in ["", "x +", "x y", "*x", "x ^"]:
        with pytest.raises(ParseError):
            LaurentPoly.parse(bad)
    with pytest.raises(ParseError):
        LaurentPoly.parse("x + z", ["x", "y"])


@given(polys)
def test_json_and_text_round_trip(g):
    assert LaurentPoly.from_json(g.to_json()) == g
    assert LaurentPoly.parse(g.to_text(), g.vars) == g


@given(polys, exps)
def test_monomial_shift_properties(g, shift):
    h, _ = g.times_monomial(shift).monomial_free()
    assert h == g.monomial_free()[0]
    assert h.is_zero() or not any(h.min_exponent())
