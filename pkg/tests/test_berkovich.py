from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from puiseux_tree.berkovich import (
    GAUSS,
    INFINITY,
    BasicOpenSpec,
    dan_distance,
    diam,
    disk,
    from_chart_w,
    in_basic_open,
    join,
    leq,
    path_point,
    seminorm_eval,
    type1,
)
from puiseux_tree.errors import DistanceInfinite, InfinityHasNoDiameter, OutOfRange
from puiseux_tree.field import ONE, ZERO, X, ComplexPuiseux, LogValue, PuiseuxNumber, parse_literal
from puiseux_tree.poly import Poly
from strategies import complex_puiseux, disks, points, polys

z = Poly.z()

# seven distinct residues: a nonzero reduced polynomial of degree <= 6 misses one
RESIDUES = [ComplexPuiseux(Fraction(a), Fraction(b)) for a, b in [(1, 0), (2, 0), (0, 1), (3, 5), (-1, 2), (7, -3), (1, 1)]]


def seminorm_oracle(p, f):
    """max |f(w)| over classical points w = v + rho x^t of the boundary of p."""
    step = ComplexPuiseux(PuiseuxNumber([(p.log_radius, 1)]))
    return max(f(p.center + rho * step).log_abs() for rho in RESIDUES)


# -- seminorms -----------------------------------------------------------------


def test_seminorm_examples():
    assert seminorm_eval(GAUSS, z) == ONE
    f = Poly([1, X, 1])
    assert seminorm_eval(disk(0, 1), f) == LogValue(Fraction(2))
    v = ComplexPuiseux(parse_literal("x"), 1)
    assert seminorm_eval(type1(v), Poly.linear(v)) == ZERO


def test_seminorm_at_infinity_is_only_defined_on_constants():
    assert seminorm_eval(INFINITY, Poly([X])) == LogValue(Fraction(1))


@given(disks(), polys(max_degree=6))
def test_seminorm_matches_boundary_sampling(p, f):
    assert seminorm_eval(p, f) == seminorm_oracle(p, f)


@given(points(), polys(max_degree=3), polys(max_degree=3))
def test_seminorm_multiplicative(p, f, g):
    assert seminorm_eval(p, f * g) == seminorm_eval(p, f) * seminorm_eval(p, g)


@given(points(), polys(max_degree=6), polys(max_degree=6))
def test_seminorm_ultrametric(p, f, g):
    a, b, c = seminorm_eval(p, f), seminorm_eval(p, g), seminorm_eval(p, f + g)
    assert c <= max(a, b)
    if a != b:
        assert c == max(a, b)


@given(complex_puiseux(), polys(max_degree=4), st.lists(st.sampled_from([Fraction(k, 2) for k in range(-6, 7)]), min_size=2, max_size=6, unique=True))
def test_density_along_nested_disks(v, f, radii):
    # shrinking disks around v: the seminorm values decrease toward |f(v)|
    values = [seminorm_eval(disk(v, t), f) for t in sorted(radii, reverse=True)]
    assert all(b <= a for a, b in zip(values, values[1:]))
    assert all(f(v).log_abs() <= w for w in values)


# -- join, order, diameter -----------------------------------------------------


def test_join_examples():
    assert join(GAUSS, disk("x", 0)) == disk(0, 1)
    assert join(disk("x", 2), disk("x", 2)) == disk("x", 2)
    assert join(type1(0), type1(1)) == GAUSS
    assert join(type1(0), INFINITY) == INFINITY


def test_disk_equality_uses_any_center():
    assert disk("x^(-1)", 0) == GAUSS
    assert disk(ComplexPuiseux(1, "x^(-2)"), Fraction(-1)) == disk(1, -1)
    assert disk("x", 0) != GAUSS


def test_diam_examples():
    assert diam(type1("x")) == ZERO
    assert diam(disk(0, 3)) == LogValue(Fraction(3))
    assert diam(join(type1(0), type1("x^(-2)"))) == LogValue(Fraction(-2))
    with pytest.raises(InfinityHasNoDiameter):
        diam(INFINITY)


@given(points(), points(), points())
def test_join_is_a_semilattice(p, q, r):
    assert join(p, p) == p
    assert join(p, q) == join(q, p)
    assert join(join(p, q), r) == join(p, join(q, r))
    assert leq(p, join(p, q)) and leq(q, join(p, q))


@given(points(), points())
def test_order_agrees_with_seminorms(p, q):
    # p <= q forces eta_p(f) <= eta_q(f), checked on linear forms
    if leq(p, q):
        for c in (p.center, q.center, ComplexPuiseux(0)):
            f = Poly.linear(c)
            assert seminorm_eval(p, f) <= seminorm_eval(q, f)


# -- metric and paths ----------------------------------------------------------


def test_dan_examples():
    assert dan_distance(disk(0, 1), disk(0, 4)) == 3
    p = disk("x", Fraction(1, 2))
    assert dan_distance(p, p) == 0
    assert dan_distance(GAUSS, disk("x^2", 0)) == 4
    with pytest.raises(DistanceInfinite):
        dan_distance(type1(0), GAUSS)


def test_path_examples():
    assert path_point(GAUSS, disk(0, 4), 1) == disk(0, 1)
    p, q = GAUSS, disk("x", 0)
    assert path_point(p, q, 0) == p
    assert path_point(p, q, 1) == disk(0, 1)
    assert path_point(p, q, 2) == q
    with pytest.raises(OutOfRange):
        path_point(p, q, 3)


@given(disks(), disks())
def test_dan_is_a_metric(p, q):
    d = dan_distance(p, q)
    assert d == dan_distance(q, p)
    assert (d == 0) == (p == q)


@given(disks(), disks(), disks())
def test_triangle_inequality(p, q, r):
    assert dan_distance(p, r) <= dan_distance(p, q) + dan_distance(q, r)


@given(disks(), disks(), disks(), disks())
def test_four_point_condition(p, q, r, s):
    d = dan_distance
    assert d(p, q) + d(r, s) <= max(d(p, r) + d(q, s), d(p, s) + d(q, r))


@given(disks(), disks(), st.fractions(min_value=0, max_value=1, max_denominator=12))
def test_path_point_lies_on_the_arc(p, q, frac):
    total = dan_distance(p, q)
    s = total * frac
    m = path_point(p, q, s)
    top = join(p, q)
    assert join(m, top) == top
    assert dan_distance(p, m) == s
    assert dan_distance(m, q) == total - s
    assert path_point(p, q, total) == q


# -- charts and basic opens ----------------------------------------------------


def test_chart_w_conversion():
    assert from_chart_w(0) == INFINITY
    assert from_chart_w("x") == type1("x^(-1)")
    # D_w(0, e^2) contains infinity and is D_z(0, e^-2) seen from the other side
    assert from_chart_w(0, 2) == disk(0, -2)
    assert from_chart_w("x", 0) == disk("x^(-1)", -2)


@given(disks())
def test_chart_w_round_trip_through_inversion(p):
    v = p.center
    assume(not v.is_zero() and v.log_abs().exponent > p.log_radius)
    # invert z -> 1/z twice
    w = from_chart_w(v, p.log_radius)
    back = from_chart_w(w.center, w.log_radius)
    assert back == p


def test_basic_open_examples():
    assert in_basic_open(GAUSS, BasicOpenSpec("open_disk", 0, 1))
    assert not in_basic_open(disk(0, 1), BasicOpenSpec("open_disk", 0, 1))
    assert in_basic_open(INFINITY, BasicOpenSpec("complement_of_closed", excluded=[(0, 5)]))
    annulus = BasicOpenSpec("open_disk_minus_closed", 0, 2, [(0, 0)])
    assert in_basic_open(disk(0, 1), annulus)
    assert not in_basic_open(GAUSS, annulus)
    assert not in_basic_open(INFINITY, annulus)
