from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistk.poly_core import (
    MultiPoly,
    ParseError,
    PoleError,
    RatPoly,
    Ring,
    RingMismatchError,
    arith,
    evaluate,
    parse,
    partial_derivative,
    render,
    validate,
)

X3 = Ring(("x1", "x2", "x3"))
X2 = Ring(("x1", "x2"))
L2 = Ring(("x1", "x2"), laurent=True)
E2 = Ring(("e1", "e2"))


def P(text, ring=X3):
    return parse(text, ring)


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5), max_size=5
).map(lambda d: MultiPoly(X3, d))


# ---- arith ----

def test_difference_of_squares():
    assert arith(P("x1+x2"), P("x1-x2"), "mul") == P("x1^2 - x2^2")


def test_add_zero_is_identity():
    p = P("3*x1*x2 - x3^2 + 7")
    assert arith(p, X3.zero(), "add") == p


def test_square_of_trinomial_oracle():
    # direct expansion: squares with coefficient 1, cross terms with coefficient 2
    expected = {}
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            expected[tuple(e)] = expected.get(tuple(e), 0) + 1
    sq = P("(x1+x2+x3)^2")
    assert sq.terms == expected
    assert len(sq) == 6
    assert sorted(sq.terms.values()) == [1, 1, 1, 2, 2, 2]


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        arith(P("x1"), parse("x1", X2), "add")
    with pytest.raises(RingMismatchError):
        P("x1") * parse("x1", X2)


def test_canonical_order_is_grevlex():
    p = P("x3^2 + x1*x3 + x2^2 + x1*x2 + x1^2")
    assert render(p) == "x1^2 + x1*x2 + x2^2 + x1*x3 + x3^2"


def test_rational_promotion():
    q = P("x1") * Fraction(1, 2)
    assert isinstance(q, RatPoly)
    assert q.coefficient((1, 0, 0)) == Fraction(1, 2)
    assert (q + q).to_integer() == P("x1")


# ---- partial derivative ----

def test_power_rule():
    assert partial_derivative(P("x1^2*x2"), 0) == P("2*x1*x2")


def test_derivative_of_constant():
    assert partial_derivative(P("17"), 0).is_zero()


def test_derivative_newton_oracle():
    p = parse("e1^4 - 4*e1^2*e2 + 2*e2^2", E2)
    assert partial_derivative(p, 0) == parse("4*e1^3 - 8*e1*e2", E2)


def test_derivative_index_out_of_range():
    with pytest.raises(IndexError):
        partial_derivative(P("x1"), 3)


def test_laurent_derivative_requires_opt_in():
    p = parse("x1^-1*x2", L2)
    with pytest.raises(ValueError):
        partial_derivative(p, 0)
    assert partial_derivative(p, 0, allow_laurent=True) == parse("-x1^-2*x2", L2)


# ---- evaluate ----

def test_evaluate_direct():
    assert evaluate(parse("x1^2 + x2", X2), (1, 2)) == 3


def test_evaluate_pole():
    with pytest.raises(PoleError):
        evaluate(parse("x1*x2^-1", L2), (1, 0))


def test_evaluate_newton_identity():
    # e1^2 - 2 e2 at (e1, e2) = (1+2, 1*2) must equal 1^2 + 2^2
    assert evaluate(parse("e1^2 - 2*e2", E2), (3, 2)) == 5 == 1**2 + 2**2


def test_evaluate_rational_and_complex():
    p = P("x1^2 - x2*x3")
    assert evaluate(p, (Fraction(1, 2), 1, 1)) == Fraction(-3, 4)
    assert evaluate(p, (1j, 1, 1)) == pytest.approx(-2)


def test_laurent_evaluation_is_exact():
    assert evaluate(parse("x1^-2", L2), (2, 1)) == Fraction(1, 4)


# ---- parse / render ----

def test_parse_two_terms():
    p = P("x1^2*x2 - 3")
    assert p.terms == {(2, 1, 0): 1, (0, 0, 0): -3}


def test_truncated_input_offset():
    with pytest.raises(ParseError) as err:
        P("x1 + ")
    assert err.value.offset == 5


def test_commutativity_canonicalization():
    assert render(P("x2*x1")) == "x1*x2"


@pytest.mark.parametrize(
    "text, offset",
    [("x1 * * x2", 5), ("(x1 + x2", 8), ("x1 $ x2", 3), ("x1^x2", 3)],
)
def test_syntax_error_positions(text, offset):
    with pytest.raises(ParseError) as err:
        P(text)
    assert err.value.offset == offset


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        P("x4 + 1")
    with pytest.raises(ParseError, match="unknown variable"):
        P("e1")


def test_negative_exponent_needs_laurent_ring():
    with pytest.raises(ParseError, match="non-Laurent"):
        parse("x1^-1", X2)
    assert parse("x1^-1*x1", L2) == L2.one()


def test_render_signs():
    assert render(P("-x1 + 2*x2 - 1")) == "-x1 + 2*x2 - 1"
    assert render(X3.zero()) == "0"
    assert render(P("x1") * Fraction(-3, 2)) == "-3/2*x1"


def test_rational_parse_round_trip():
    q = parse("3/2*x1 - 1/3", X3, rational=True)
    assert isinstance(q, RatPoly)
    assert parse(render(q), X3, rational=True) == q


# ---- properties ----

@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == X3.zero()
    for p in (a + b, a * b, a - c, -a):
        validate(p)


@given(polys)
def test_parse_render_round_trip(p):
    assert parse(render(p), X3) == p


@given(polys, polys, st.tuples(*[st.fractions(-3, 3, max_denominator=4)] * 3))
@settings(max_examples=50)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
    assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)


def test_polynomials_are_hashable_values():
    assert len({P("x1+x2"), P("x2+x1"), P("x1")}) == 2
