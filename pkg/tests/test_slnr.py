import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from puiseux_tree.checks import random_rotation, random_sl, random_spd
from puiseux_tree.errors import NotPositiveDefinite
from puiseux_tree.slnr import (
    CoverPoint,
    RepTuple,
    act,
    cartan_delta,
    check_displacement_bound,
    cover_lift_and_act,
    d_delta,
    eta_norm,
    format_word,
    identity_lift,
    in_U_k,
    is_minimal_vector,
    leading_minors,
    matrix_bounds_check,
    parse_word,
    word_matrix,
)

seeds = st.integers(0, 2**32 - 1)
sizes = st.integers(2, 4)
DIAG = np.diag([2.0, 0.5])
UNIPOTENT = np.array([[1.0, 1.0], [0.0, 1.0]])


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def rng_of(seed):
    return np.random.default_rng(seed)


def cartan_oracle(A, B):
    """Eigenvalues of A^(-1/2) B A^(-1/2) through a matrix square root."""
    root = np.real(scipy.linalg.sqrtm(A))
    inv_root = np.linalg.inv(root)
    return np.sort(np.linalg.eigvals(inv_root @ B @ inv_root).real)[::-1]


# -- examples ------------------------------------------------------------------


def test_minimal_vector_examples():
    assert is_minimal_vector(RepTuple(["a"], [rotation(math.pi / 6)])).ok
    assert is_minimal_vector(RepTuple(["a"], [DIAG])).ok
    check = is_minimal_vector(RepTuple(["a"], [UNIPOTENT]))
    commutator = UNIPOTENT @ UNIPOTENT.T - UNIPOTENT.T @ UNIPOTENT
    assert not check.ok
    assert check.residual == pytest.approx(np.linalg.norm(commutator), rel=1e-12)


def test_cartan_examples():
    I2 = np.eye(2)
    assert cartan_delta(I2, np.diag([4.0, 0.25])).lambdas == pytest.approx([4, 0.25])
    B = random_spd(rng_of(1), 3)
    assert cartan_delta(B, B).lambdas == pytest.approx([1, 1, 1], rel=1e-9)
    g = np.array([[2.0, 1.0], [0.0, 0.5]])
    sv = np.linalg.svd(g, compute_uv=False)
    assert cartan_delta(I2, act(g, I2)).lambdas == pytest.approx(sv**2, rel=1e-12)


def test_d_delta_examples():
    assert d_delta(np.eye(2), np.diag([4.0, 0.25])) == pytest.approx(16)
    A = random_spd(rng_of(2), 3)
    assert d_delta(A, A) == pytest.approx(1, rel=1e-9)


def test_non_spd_rejected():
    with pytest.raises(NotPositiveDefinite):
        cartan_delta(np.eye(2), np.diag([1.0, -1.0]))


def test_eta_examples():
    assert eta_norm(RepTuple(["a", "b"], [np.eye(2), np.eye(2)])) == pytest.approx(4)
    assert eta_norm(RepTuple(["a"], [DIAG])) == pytest.approx(4.25)
    assert eta_norm(RepTuple(["a"], [rotation(1.0)])) == pytest.approx(2)


def test_cover_examples():
    p = CoverPoint(np.diag([4.0, 0.25]))
    assert p.t == pytest.approx([0.5])
    q = identity_lift(2)
    same = cover_lift_and_act(np.eye(2), q)
    assert same.A == pytest.approx(q.A) and same.t == pytest.approx(q.t)
    moved = cover_lift_and_act(DIAG, q)
    assert moved.A == pytest.approx(np.diag([4.0, 0.25]))
    assert moved.t == pytest.approx([0.5])


def test_U_k_examples():
    rep = RepTuple(["a", "b"], [np.eye(2), np.eye(2)])
    p = CoverPoint(np.diag([4.0, 0.25]))
    assert not in_U_k(rep, p, 1)
    assert in_U_k(rep, p, 3)
    assert not in_U_k(rep, p, 2)  # d = 16 = eta^2 exactly, excluded
    assert in_U_k(RepTuple(["a"], [DIAG]), identity_lift(2), 1)


def test_displacement_examples():
    rep = RepTuple(["a"], [DIAG])
    empty = check_displacement_bound(rep, "", identity_lift(2))
    assert empty.lhs == pytest.approx(1) and empty.ok
    one = check_displacement_bound(rep, "a", identity_lift(2))
    assert one.lhs == pytest.approx(16)
    assert one.rhs == pytest.approx(4.25**2)
    assert one.ok


def test_headline_bound_fails_for_a_single_letter():
    # the eta^{(n/2)|w|} form is too small: 16 against 4.25
    check = check_displacement_bound(RepTuple(["a"], [DIAG]), "a", identity_lift(2))
    assert check.headline_rhs == pytest.approx(4.25)
    assert not check.headline_ok


def test_orthogonal_generators_do_not_move_the_distance():
    rep = RepTuple(["a", "b"], [rotation(0.3), rotation(1.1)])
    p = CoverPoint(random_spd(rng_of(5), 2))
    check = check_displacement_bound(rep, "ab'a", p)
    assert check.lhs == pytest.approx(d_delta(np.eye(2), p.A), rel=1e-9)
    assert check.ok


def test_matrix_bounds_examples():
    report = matrix_bounds_check(np.diag([4.0, 0.25]))
    assert report.ok
    tight = matrix_bounds_check(np.eye(3))
    assert tight.ok and tight.entry_slack == 0 and tight.minor_slack == 0


def test_words():
    letters = parse_word("ab'a", ["a", "b"])
    assert letters == [("a", 1), ("b", -1), ("a", 1)]
    assert format_word(letters) == "ab'a"
    with pytest.raises(ValueError):
        parse_word("c", ["a", "b"])
    rep = RepTuple(["a"], [DIAG])
    assert word_matrix(rep, "aa'") == pytest.approx(np.eye(2))


# -- properties ----------------------------------------------------------------


@given(seeds, sizes)
def test_cartan_matches_sqrtm_oracle(seed, n):
    rng = rng_of(seed)
    A, B = random_spd(rng, n), random_spd(rng, n)
    lam = cartan_delta(A, B).lambdas
    assert lam == pytest.approx(cartan_oracle(A, B), rel=1e-9)
    assert np.prod(lam) == pytest.approx(1, rel=1e-9)
    assert list(lam) == sorted(lam, reverse=True)


@given(seeds, sizes)
def test_d_delta_is_invariant(seed, n):
    rng = rng_of(seed)
    A, B, g = random_spd(rng, n), random_spd(rng, n), random_sl(rng, n)
    assert d_delta(act(g, A), act(g, B)) == pytest.approx(d_delta(A, B), rel=1e-9)


@given(seeds, sizes)
def test_d_delta_is_submultiplicative(seed, n):
    rng = rng_of(seed)
    A, B, C = (random_spd(rng, n) for _ in range(3))
    assert d_delta(A, C) <= d_delta(A, B) * d_delta(B, C) * (1 + 1e-9)
    assert d_delta(A, B) >= 1 - 1e-12


@given(seeds, sizes)
def test_cover_action_preserves_equations(seed, n):
    rng = rng_of(seed)
    p = CoverPoint(random_spd(rng, n))
    g = random_sl(rng, n)
    assert np.abs(cover_lift_and_act(g, p).residuals()).max() <= 1e-10


@given(seeds, sizes)
def test_cover_action_is_a_group_action(seed, n):
    rng = rng_of(seed)
    p = CoverPoint(random_spd(rng, n))
    g, h = random_sl(rng, n), random_sl(rng, n)
    left = cover_lift_and_act(g @ h, p)
    right = cover_lift_and_act(g, cover_lift_and_act(h, p))
    assert left.A == pytest.approx(right.A, rel=1e-9, abs=1e-9)
    assert left.t == pytest.approx(right.t, rel=1e-9)


@given(seeds, sizes, st.data())
def test_deck_flips_commute_with_the_action(seed, n, data):
    rng = rng_of(seed)
    signs = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=n - 1, max_size=n - 1))
    p = CoverPoint(random_spd(rng, n))
    g = random_sl(rng, n)
    a = cover_lift_and_act(g, p.flip(signs))
    b = cover_lift_and_act(g, p).flip(signs)
    assert a.t == pytest.approx(b.t, rel=1e-12)


@given(seeds, sizes, st.integers(1, 3))
def test_minimal_vectors_are_rotation_stable(seed, n, s):
    rng = rng_of(seed)
    # symmetric generators give a minimal tuple
    mats = [random_spd(rng, n) for _ in range(s)]
    k = random_rotation(rng, n)
    rotated = RepTuple([f"g{i}" for i in range(s)], [k @ m @ k.T for m in mats])
    assert is_minimal_vector(rotated).residual <= 1e-10


@given(seeds, sizes, st.integers(1, 3))
def test_eta_lower_bound(seed, n, s):
    rng = rng_of(seed)
    rep = RepTuple([f"g{i}" for i in range(s)], [random_sl(rng, n) for _ in range(s)])
    assert eta_norm(rep) >= n * s * (1 - 1e-12)
    rot = RepTuple([f"g{i}" for i in range(s)], [random_rotation(rng, n) for _ in range(s)])
    assert eta_norm(rot) == pytest.approx(n * s)


@given(seeds, sizes, st.integers(0, 6))
def test_U_k_is_monotone(seed, n, k):
    rng = rng_of(seed)
    rep = RepTuple(["a"], [random_sl(rng, n)])
    p = CoverPoint(random_spd(rng, n))
    if in_U_k(rep, p, k):
        assert in_U_k(rep, p, k + 1)


@given(seeds, sizes, st.text("aAbB", max_size=6))
def test_displacement_bound_and_U_k_shift(seed, n, raw):
    rng = rng_of(seed)
    rep = RepTuple(["a", "b"], [random_sl(rng, n), random_sl(rng, n)])
    word = "".join(c.lower() + ("'" if c.isupper() else "") for c in raw)
    p = CoverPoint(random_spd(rng, n))
    check = check_displacement_bound(rep, word, p)
    assert check.ok
    assert check.lhs <= check.product_rhs * (1 + 1e-9)
    # gamma U_k lands in U_{k + n |gamma|}
    length = len(parse_word(word, rep.names))
    eta = eta_norm(rep)
    k = max(0, math.ceil(math.log(d_delta(np.eye(n), p.A)) / math.log(eta) + 1e-12))
    while not in_U_k(rep, p, k):
        k += 1
    image = cover_lift_and_act(word_matrix(rep, word), p)
    assert in_U_k(rep, image, k + n * length)


@given(seeds, sizes)
def test_matrix_bounds_on_gram_matrices(seed, n):
    rng = rng_of(seed)
    g = rng.normal(size=(n, n))
    report = matrix_bounds_check(g.T @ g)
    assert report.ok


@given(seeds, sizes)
def test_leading_minors_positive_for_spd(seed, n):
    A = random_spd(rng_of(seed), n)
    assert all(m > 0 for m in leading_minors(A))
    assert leading_minors(A)[-1] == pytest.approx(1, rel=1e-9)
