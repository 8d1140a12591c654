from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from puiseux_tree.berkovich import GAUSS, INFINITY, dan_distance, disk, path_point, type1
from puiseux_tree.errors import DistanceInfinite
from puiseux_tree.field import ONE, LogValue, ComplexPuiseux, parse_literal
from puiseux_tree.poly import Poly
from puiseux_tree.real_locus import (
    check_max_squares,
    galois_conjugate,
    is_real_point,
    max_squares_verdict,
    project_to_real_tree,
)
from strategies import complex_puiseux, disks, points, polys

z = Poly.z()
i = ComplexPuiseux(0, 1)
fractions = st.fractions(min_value=0, max_value=1, max_denominator=8)


def test_galois_examples():
    ix = i * ComplexPuiseux(parse_literal("x^(-1)"))
    assert galois_conjugate(disk(ix, 0)) == disk(-ix, 0)
    p = disk("1 + x", 2)
    assert galois_conjugate(p) == p
    assert galois_conjugate(INFINITY) == INFINITY


def test_realness_examples():
    ix = i * ComplexPuiseux(parse_literal("x^(-1)"))
    assert is_real_point(disk(ix, 0)).verdict
    cert = is_real_point(disk(i, -1))
    assert not cert.verdict
    assert cert.lhs == LogValue(Fraction(-1)) and cert.rhs == ONE
    assert [f.coeffs for f in cert.family] == [z.coeffs, Poly([1]).coeffs]
    assert cert.reverify(disk(i, -1))
    assert is_real_point(type1("x - 3")).verdict
    assert not is_real_point(type1(i)).verdict


def test_max_squares_examples():
    check = check_max_squares(GAUSS, [z, Poly([1])])
    assert check.holds and check.lhs == check.rhs == ONE
    check = check_max_squares(disk(i, -1), [z, Poly([1])])
    assert not check.holds and check.lhs == LogValue(Fraction(-1)) and check.rhs == ONE
    assert check_max_squares(disk(i, 5), [Poly([1])]).holds


def test_max_squares_rejects_complex_coefficients():
    with pytest.raises(ValueError):
        check_max_squares(GAUSS, [Poly([i])])


def test_projection_examples():
    p = disk("x", 1)
    assert project_to_real_tree(p) == p
    assert project_to_real_tree(disk(i, -1)) == GAUSS
    assert project_to_real_tree(disk(i * ComplexPuiseux(parse_literal("x")), 0)) == disk(0, 1)
    with pytest.raises(DistanceInfinite):
        project_to_real_tree(type1(i))


# -- properties ----------------------------------------------------------------


@given(points())
def test_galois_is_an_involution(p):
    assert galois_conjugate(galois_conjugate(p)) == p


@given(points())
def test_real_iff_galois_fixed(p):
    cert = is_real_point(p)
    assert cert.verdict == (galois_conjugate(p) == p)
    assert cert.reverify(p)


@given(disks())
def test_disk_criterion_agrees_with_max_squares(p):
    assert is_real_point(p).verdict == max_squares_verdict(p)


@given(disks(real=True), st.lists(polys(max_degree=3, real=True), min_size=1, max_size=3))
def test_real_points_satisfy_every_family(p, fs):
    assert check_max_squares(p, fs).holds


@given(disks(), disks(), fractions)
def test_non_real_locus_is_open(p, q, frac):
    # a non-real point keeps a whole neighbourhood of non-real points
    if is_real_point(p).verdict:
        return
    radius = dan_distance(p, project_to_real_tree(p))
    s = min(radius * frac, dan_distance(p, q))
    if s < radius:
        assert not is_real_point(path_point(p, q, s)).verdict


@given(disks(real=True), disks(real=True), fractions)
def test_real_tree_is_convex(p, q, frac):
    m = path_point(p, q, dan_distance(p, q) * frac)
    assert is_real_point(m).verdict


@given(disks())
def test_projection_is_real_idempotent_and_nearest(p):
    r = project_to_real_tree(p)
    assert is_real_point(r).verdict
    assert project_to_real_tree(r) == r
    # no real point on the way from p to its conjugate comes closer
    q = galois_conjugate(p)
    assert dan_distance(p, r) * 2 == dan_distance(p, q)


@given(disks(), disks())
def test_projection_is_one_lipschitz(p, q):
    assert dan_distance(project_to_real_tree(p), project_to_real_tree(q)) <= dan_distance(p, q)


@given(disks(), disks(real=True))
def test_projection_minimizes_distance_to_real_points(p, r):
    assert dan_distance(p, project_to_real_tree(p)) <= dan_distance(p, r)
