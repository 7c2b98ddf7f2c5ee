from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bslab.errors import ParseError, RingMismatchError
from bslab.exact_poly import (
    GLOBAL,
    LOCAL,
    MonomialOrder,
    PolyRing,
    format_polynomial,
    mono_mul,
    parse_polynomial,
    partial_derivatives,
    weighted_degree,
)
from oracles.naive import dense_product

XY = PolyRing(("x", "y"))
XYZ = PolyRing(("x", "y", "z"))


def test_parse_three_terms(P):
    f = P("x^2*y^2 + x^5 + y^5")
    assert dict(f.terms) == {(2, 2): 1, (5, 0): 1, (0, 5): 1}


def test_parse_zero_and_cancellation(P):
    assert P("0", "x").is_zero()
    assert P("(1/2)*x - (1/2)*x", "x").is_zero()


@pytest.mark.parametrize("text,terms", [
    ("3/4*x*y", {(1, 1): Fraction(3, 4)}),
    ("-x + (-2/6)", {(1, 0): -1, (0, 0): Fraction(-1, 3)}),
    ("  x ^ 2 *  y  ", {(2, 1): 1}),
    ("x*x*y^0", {(2, 0): 1}),
    ("2*3*x", {(1, 0): 6}),
])
def test_parse_variants(P, text, terms):
    assert dict(P(text).terms) == terms


@pytest.mark.parametrize("text,pos", [("x + * y", 4), ("x^", 2), ("x + q", 4), ("1/0*x", 2), ("x $ y", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, ["x", "y"])
    assert err.value.position == pos


def test_unknown_variable_is_parse_error():
    with pytest.raises(ParseError, match="unknown variable 'z'"):
        parse_polynomial("x + z", ["x", "y"])


def test_huge_coefficients_are_exact(P):
    f = P("123456789012345678901234567890*x - 123456789012345678901234567889*x", "x")
    assert dict(f.terms) == {(1,): 1}


def test_partial_derivatives(P):
    f = P("x^2*y^2 + x^5 + y^5")
    fx, fy = partial_derivatives(f)
    assert fx == P("2*x*y^2 + 5*x^4")
    assert fy == P("2*x^2*y + 5*y^4")
    assert all(g.is_zero() for g in partial_derivatives(P("7")))
    assert partial_derivatives(P("x^2+y^2+z^2", "xyz")) == [P("2*x", "xyz"), P("2*y", "xyz"), P("2*z", "xyz")]


@pytest.mark.parametrize("m,w,expected", [
    ((1, 3), (Fraction(1, 3), Fraction(1, 5)), Fraction(14, 15)),
    ((0, 0, 0), (Fraction(1, 2), Fraction(1, 7), Fraction(3)), 0),
    ((2, 2), (Fraction(1, 4), Fraction(1, 4)), 1),
])
def test_weighted_degree(m, w, expected):
    assert weighted_degree(m, w) == expected


def test_weighted_degree_length_mismatch():
    with pytest.raises(ValueError):
        weighted_degree((1, 2), (Fraction(1),))


def test_arithmetic_examples(P):
    assert P("x + y") ** 2 == P("x^2 + 2*x*y + y^2")
    assert (P("x^2*y^2+x^5+y^5") * XY.zero()).is_zero()


def test_square_against_dense_oracle(P):
    f = P("x^2*y^2 + x^5 + y^5")
    sq = f ** 2
    assert dict(sq.terms) == dense_product(dict(f.terms), dict(f.terms), 2)
    assert len(sq) == 6
    for m in [(7, 2), (2, 7), (5, 5)]:
        assert sq.terms[m] == 2


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        parse_polynomial("x", ["x"]) + parse_polynomial("x", ["x", "y"])


def test_equality_ignores_order_attached_to_ring():
    a = parse_polynomial("x + y^2", ["x", "y"], order=LOCAL)
    b = parse_polynomial("y^2 + x", ["x", "y"], order=GLOBAL)
    assert a == b and hash(a) == hash(b)
    assert str(a) == "x + y^2"
    assert str(b) == "y^2 + x"


def test_exponent_overflow_checked():
    with pytest.raises(OverflowError):
        mono_mul((2**31 - 1,), (1,))


# --- property tests --------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos2 = st.tuples(st.integers(0, 4), st.integers(0, 4))


@st.composite
def polys(draw, ring=XY):
    terms = draw(st.dictionaries(monos2, coeffs, max_size=5))
    return ring.from_terms(terms)


@settings(max_examples=1000, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == XY.zero()


@settings(max_examples=300, deadline=None)
@given(polys())
def test_print_parse_roundtrip(a):
    text = format_polynomial(a)
    assert parse_polynomial(text, XY.variables) == a
    assert format_polynomial(parse_polynomial(text, XY.variables)) == text


@settings(max_examples=300, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), coeffs, max_size=6))
def test_mixed_partials_commute(terms):
    f = XYZ.from_terms(terms)
    for i in range(3):
        for j in range(3):
            assert f.derivative(i).derivative(j) == f.derivative(j).derivative(i)


weights = st.tuples(*(st.fractions(min_value=Fraction(1, 9), max_value=3, max_denominator=9),) * 3)
monos3 = st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9))


@given(monos3, monos3, weights)
def test_weighted_degree_additive(m1, m2, w):
    assert weighted_degree(mono_mul(m1, m2), w) == weighted_degree(m1, w) + weighted_degree(m2, w)


ORDERS = [GLOBAL, LOCAL, MonomialOrder("global", (1, 2, 3)),
          MonomialOrder("local", (Fraction(1, 3), Fraction(1, 5), Fraction(1, 2)))]


@pytest.mark.parametrize("order", ORDERS, ids=repr)
@settings(max_examples=300, deadline=None)
@given(a=monos3, b=monos3, c=monos3)
def test_orders_total_and_multiplicative(order, a, b, c):
    cmp = order.compare
    assert (cmp(a, b) == 0) == (a == b)
    assert cmp(a, b) == -cmp(b, a)
    if cmp(a, b) < 0 and cmp(b, c) < 0:
        assert cmp(a, c) < 0
    if cmp(a, b) < 0:
        assert cmp(mono_mul(a, c), mono_mul(b, c)) < 0


def test_local_order_puts_one_on_top():
    one = (0, 0)
    for m in [(1, 0), (0, 1), (3, 2)]:
        assert LOCAL.compare(one, m) > 0
        assert GLOBAL.compare(one, m) < 0


def test_global_is_degrevlex():
    # x*z < y^2 in degrevlex on (x, y, z)
    assert GLOBAL.compare((1, 0, 1), (0, 2, 0)) < 0
    assert GLOBAL.compare((2, 0, 0), (0, 1, 1)) > 0
