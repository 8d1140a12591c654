import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from puiseux_tree.errors import (
    DivisionByZero,
    IrrationalCoefficient,
    LiteralSyntaxError,
    NegativeInput,
    PrecisionExhausted,
)
from puiseux_tree.field import (
    DEFAULT_PRECISION,
    I,
    PUISEUX_ONE,
    X,
    ComplexPuiseux,
    LogValue,
    PuiseuxNumber,
    big_ball_index,
    compare,
    field_arith,
    format_literal,
    log_abs,
    parse_literal,
    specialize,
    sqrt_pos,
)
from strategies import complex_puiseux, nonzero_puiseux, puiseux

P = parse_literal


# -- arithmetic examples -------------------------------------------------------


def test_additive_inverse_is_exact_zero():
    r = field_arith("add", "x", "-x")
    assert r.is_zero() and r.exact


def test_half_powers_multiply_to_x():
    assert field_arith("mul", "x^(1/2)", "x^(1/2)") == X


def test_inverse_series_times_input_is_one_up_to_truncation():
    a = P("1 + x^(-1)")
    inv = field_arith("inv", a)
    assert inv.terms[:4] == ((0, 1), (-1, -1), (-2, 1), (-3, -1))
    err = a * inv - PUISEUX_ONE
    assert not err.terms
    assert err.known_below <= DEFAULT_PRECISION


def test_inverse_of_monomial_stays_exact():
    inv = P("4*x^(3/2)").inv()
    assert inv.exact and inv == P("1/4*x^(-3/2)")


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        PuiseuxNumber().inv()


def test_cancellation_is_reported_lazily():
    a = P("1 + O(x^(-3))") - 1
    assert not a.terms
    with pytest.raises(PrecisionExhausted):
        a.sign()
    with pytest.raises(PrecisionExhausted):
        a.inv()


# -- ordering ------------------------------------------------------------------


@pytest.mark.parametrize(
    "a, b, expected",
    [("x", 10**100, "GT"), ("x^(-1)", 0, "GT"), ("1 + x^(-1)", 1, "GT"), ("-x", "x^(-5)", "LT"), ("x", "x", "EQ")],
)
def test_compare(a, b, expected):
    assert compare(a, b) == expected


@given(puiseux(), puiseux(), puiseux())
def test_order_is_translation_invariant(a, b, c):
    if a <= b:
        assert a + c <= b + c


@given(puiseux(), puiseux())
def test_product_of_nonnegatives(a, b):
    a, b = (v if v.sign() >= 0 else -v for v in (a, b))
    assert a * b >= 0


@given(puiseux())
def test_x_is_a_big_element(a):
    assume(not a.is_zero())
    k = math.ceil(a.leading()[0]) + 1
    assert a < X**k


# -- field axioms --------------------------------------------------------------


@given(puiseux(), puiseux(), puiseux())
def test_ring_axioms_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PuiseuxNumber()


@given(nonzero_puiseux)
def test_inverse_property(a):
    err = a * a.inv() - PUISEUX_ONE
    assert not err.terms


# -- square roots --------------------------------------------------------------


def test_sqrt_examples():
    assert sqrt_pos("x^2") == X
    r = sqrt_pos("x")
    assert r == P("x^(1/2)") and r.ramification == 2
    s = sqrt_pos("1 + x^(-1)")
    assert s.terms[:3] == ((0, 1), (-1, Fraction(1, 2)), (-2, Fraction(-1, 8)))


def test_sqrt_squares_back():
    a = P("1 + x^(-1)")
    s = sqrt_pos(a, -10)
    assert not (s * s - a).truncate(-10).terms
    assert s > 0


def test_sqrt_errors():
    with pytest.raises(NegativeInput):
        sqrt_pos("-x")
    with pytest.raises(IrrationalCoefficient):
        sqrt_pos("2*x")


@given(nonzero_puiseux)
def test_sqrt_of_square(a):
    sq = a * a
    e, c = sq.leading()
    root = sqrt_pos(sq, -8)
    assert root > 0
    assert not (root * root - sq).truncate(-8).terms


# -- absolute value ------------------------------------------------------------


def test_log_abs_examples():
    assert log_abs("x") == LogValue(Fraction(1))
    assert log_abs(0).is_zero
    assert log_abs("3*x^(3/2) + x^(-2)").exponent == Fraction(3, 2)


def test_sign_convention_is_ultrametric_under_cancellation():
    h, k = P("1 + x^(-1)"), P("-1")
    assert log_abs(h + k) == LogValue(Fraction(-1))
    assert log_abs(h + k) <= max(log_abs(h), log_abs(k))


def test_complex_absolute_value_is_max_of_parts():
    assert ComplexPuiseux("x", "x^2").log_abs().exponent == 2
    assert (I * I) == ComplexPuiseux(-1)


@given(puiseux(), puiseux())
def test_log_abs_multiplicative(a, b):
    assert log_abs(a * b) == log_abs(a) * log_abs(b)


@given(puiseux(), puiseux())
def test_log_abs_ultrametric(a, b):
    la, lb = log_abs(a), log_abs(b)
    assert log_abs(a + b) <= max(la, lb)
    if la != lb:
        assert log_abs(a + b) == max(la, lb)


@given(puiseux(), puiseux())
def test_log_abs_monotone(a, b):
    a, b = sorted((abs_(a), abs_(b)))
    assert log_abs(a) <= log_abs(b)


def abs_(a):
    return -a if a.sign() < 0 else a


@given(complex_puiseux(), complex_puiseux())
def test_complex_log_abs_laws(a, b):
    assert (a * b).log_abs() == a.log_abs() * b.log_abs()
    assert (a + b).log_abs() <= max(a.log_abs(), b.log_abs())
    assert a.log_abs() ** 2 == a.norm_squared().log_abs()


def test_base_exponent_knob_rescales():
    assert P("x^3").log_abs(base_exponent=Fraction(1, 2)).exponent == 6


# -- specialization ------------------------------------------------------------


def test_specialize_examples():
    assert specialize("x", 100).value == 100
    assert specialize("1 + x^(-1)", 100).value == pytest.approx(1.01, rel=1e-15)
    assert specialize("x^(1/2) - x^(-1/2)", 1e4).value == pytest.approx(99.99, rel=1e-15)


def test_specialize_error_bound_covers_truncation():
    exact = 1 / (1 + 1 / 100)
    approx = P("1 + x^(-1)").inv(-6).specialize(100)
    assert abs(approx.value - exact) <= approx.error_bound


def test_specialize_flags_overflow():
    assert P("x^400").specialize(1e10).overflow


@pytest.mark.parametrize("t", [1e2, 1e4])
@given(a=puiseux(), b=puiseux())
def test_specialize_is_a_ring_morphism(t, a, b):
    sa, sb = a.specialize(t).value, b.specialize(t).value
    scale = max(1.0, abs(sa) + abs(sb))
    assert (a + b).specialize(t).value == pytest.approx(sa + sb, rel=1e-9, abs=1e-9 * scale)
    assert (a * b).specialize(t).value == pytest.approx(sa * sb, rel=1e-9, abs=1e-12)


# -- big-ball index ------------------------------------------------------------


@pytest.mark.parametrize(
    "values, k", [((1, 2), 1), (("x", 2), 3), (("x^(3/2)",), 4), (("x - x^(-1)",), 2), (("1/2",), 0)]
)
def test_big_ball_index(values, k):
    assert big_ball_index(values) == k


# -- literals ------------------------------------------------------------------


def test_parse_examples():
    a = P("3*x^(3/2) - 2 + x^(-1)")
    assert [e for e, _ in a.terms] == [Fraction(3, 2), 0, -1]
    assert P("x - x").is_zero()
    assert P("1/2*x^(1/2) + 0.25").terms == ((Fraction(1, 2), Fraction(1, 2)), (0, Fraction(1, 4)))
    assert P("x^2") == P("x^(2)") == X * X
    assert P("2*x + 3*x") == P("5*x")


def test_canonical_format():
    assert format_literal(P("x^(-1) + 3*x^(3/2) - 2")) == "3*x^(3/2) - 2 + x^(-1)"
    assert format_literal(P("x^(4/2)")) == "x^(2)"
    assert format_literal(PuiseuxNumber()) == "0"
    assert format_literal(P("1 + O(x^(-3))")) == "1 + O(x^(-3))"


@pytest.mark.parametrize("text, offset", [("3*x^(", 5), ("x^^2", 2), ("2 +", 3), ("1/0", 2), ("", 0)])
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(LiteralSyntaxError) as info:
        P(text)
    assert info.value.offset == offset


@given(puiseux(max_terms=5))
def test_literal_round_trip(a):
    assert P(format_literal(a)) == a


@given(st.integers(-40, -1), puiseux())
def test_truncated_round_trip(kb, a):
    b = a.truncate(kb)
    assert P(format_literal(b)) == b
