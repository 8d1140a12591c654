"""Linear algebra on SL_n(R) and its symmetric space of unimodular SPD matrices.

``g`` acts on an SPD matrix ``A`` by ``g.A = g A g^T``.  The Cartan
projection of a pair ``(A, B)`` is the descending spectrum of
``A^{-1/2} B A^{-1/2}``, and the multiplicative distance is the ratio of its
extreme eigenvalues.

Generator words are strings over the generator names, an apostrophe marking
an inverse: with generators ``a, b`` the word ``"ab'a"`` is ``a b^{-1} a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import NotPositiveDefinite

DEFAULT_RTOL = 1e-9


# ---------------------------------------------------------------------------
# representations and words
# ---------------------------------------------------------------------------


@dataclass
class RepTuple:
    """Generator matrices of a representation of a finitely generated group.

    ``mats`` holds float arrays in real mode and nested lists of
    :class:`PuiseuxNumber` in exact mode.
    """

    names: list[str]
    mats: list
    exact: bool = False

    def __post_init__(self):
        if len(self.names) != len(self.mats):
            raise ValueError("one matrix per generator name")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        if not self.exact:
            self.mats = [np.asarray(m, dtype=float) for m in self.mats]

    @property
    def n(self) -> int:
        return len(self.mats[0])

    @property
    def s(self) -> int:
        return len(self.mats)

    def generator(self, name: str):
        return self.mats[self.names.index(name)]


def parse_word(text: str, names: Sequence[str]) -> list[tuple[str, int]]:
    """Split a word into ``(name, +1 | -1)`` letters by longest-name matching."""
    ordered = sorted(names, key=len, reverse=True)
    letters = []
    i = 0
    while i < len(text):
        if text[i].isspace() or text[i] == "*":
            i += 1
            continue
        for name in ordered:
            if text.startswith(name, i):
                i += len(name)
                power = 1
                if i < len(text) and text[i] == "'":
                    power = -1
                    i += 1
                letters.append((name, power))
                break
        else:
            raise ValueError(f"no generator name matches {text[i:]!r} at offset {i}")
    return letters


def format_word(letters: Sequence[tuple[str, int]]) -> str:
    return "".join(name + ("'" if power < 0 else "") for name, power in letters)


def word_matrix(rep: RepTuple, word) -> np.ndarray:
    """Float matrix of a word in a real-mode representation."""
    letters = parse_word(word, rep.names) if isinstance(word, str) else word
    out = np.eye(rep.n)
    for name, power in letters:
        g = rep.generator(name)
        out = out @ (g if power > 0 else np.linalg.inv(g))
    return out


# ---------------------------------------------------------------------------
# SPD helpers
# ---------------------------------------------------------------------------


def _check_spd(A: np.ndarray, label: str = "matrix") -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotPositiveDefinite(f"{label} is not square")
    if not np.allclose(A, A.T, rtol=1e-9, atol=1e-12 * max(1.0, np.abs(A).max())):
        raise NotPositiveDefinite(f"{label} is not symmetric")
    try:
        np.linalg.cholesky(A)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"{label} is not positive definite") from exc
    return (A + A.T) / 2


def leading_minors(A: np.ndarray) -> list[float]:
    """``det(A[j])`` for ``j = 1 .. n``."""
    return [float(np.linalg.det(A[:j, :j])) for j in range(1, len(A) + 1)]


def act(g: np.ndarray, A: np.ndarray) -> np.ndarray:
    """``g.A = g A g^T``."""
    M = g @ A @ g.T
    return (M + M.T) / 2


# ---------------------------------------------------------------------------
# Cartan projection and distance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanDiag:
    lambdas: tuple[float, ...]

    @property
    def ratio(self) -> float:
        return self.lambdas[0] / self.lambdas[-1]


def cartan_delta(A, B) -> CartanDiag:
    """Descending eigenvalues of ``A^{-1/2} B A^{-1/2}``.

    Solved as the generalized symmetric-definite problem ``B v = lambda A v``.
    """
    A = _check_spd(_matrix_of(A), "A")
    B = _check_spd(_matrix_of(B), "B")
    lam = scipy.linalg.eigh(B, A, eigvals_only=True)
    return CartanDiag(tuple(float(v) for v in sorted(lam, reverse=True)))


def d_delta(A, B) -> float:
    """Multiplicative Cartan distance ``lambda_1 / lambda_n >= 1``."""
    return cartan_delta(A, B).ratio


def log_d_delta_sl2(g: np.ndarray) -> float:
    """``log d_delta(Id, g.Id)`` for ``g`` in SL_2, stable for huge entries.

    With ``T = |g|_F^2`` the eigenvalues of ``g g^T`` are the roots of
    ``l^2 - T l + 1``, so the distance is the square of the larger one.
    ``T - 2 = (a - d)^2 + (b + c)^2`` on SL_2 is used directly so that
    matrices close to a rotation keep their relative accuracy.
    """
    (a, b), (c, d) = np.asarray(g, dtype=float)
    u = (a - d) ** 2 + (b + c) ** 2
    if not math.isfinite(u):
        raise OverflowError("matrix entries overflow")
    # lam = 1 + u/2 + sqrt(u (u + 4))/2
    return 2.0 * math.log1p(u / 2.0 + math.sqrt(u * (u + 4.0)) / 2.0)


def eta_norm(rep: RepTuple) -> float:
    """``sum_i tr(g_i^T g_i)``: squared Frobenius norm of the generator tuple."""
    return float(sum(np.sum(np.asarray(g) ** 2) for g in rep.mats))


@dataclass(frozen=True)
class MinimalVectorCheck:
    ok: bool
    residual: float


def is_minimal_vector(rep: RepTuple, tol: float = 1e-10) -> MinimalVectorCheck:
    """Test ``sum_i [g_i, g_i^T] = 0`` in Frobenius norm."""
    total = np.zeros((rep.n, rep.n))
    for g in rep.mats:
        total += g @ g.T - g.T @ g
    residual = float(np.linalg.norm(total))
    return MinimalVectorCheck(residual <= tol, residual)


# ---------------------------------------------------------------------------
# the algebraic cover
# ---------------------------------------------------------------------------


@dataclass
class CoverPoint:
    """``(A, t)`` with ``A`` unimodular SPD and ``det(A[j]) t_j^2 = 1``."""

    A: np.ndarray
    t: np.ndarray = field(default=None)

    def __post_init__(self):
        self.A = _check_spd(self.A, "A")
        if self.t is None:
            self.t = np.array([m ** -0.5 for m in leading_minors(self.A)[:-1]])
        self.t = np.asarray(self.t, dtype=float)
        if len(self.t) != len(self.A) - 1:
            raise ValueError("need n-1 cover coordinates")

    def residuals(self) -> np.ndarray:
        """``det(A[j]) t_j^2 - 1`` for each ``j``."""
        minors = leading_minors(self.A)[:-1]
        return np.array([m * t * t - 1.0 for m, t in zip(minors, self.t)])

    def flip(self, signs) -> "CoverPoint":
        """Deck transformation: multiply the ``t_j`` by ``+-1``."""
        return CoverPoint(self.A.copy(), self.t * np.asarray(signs, dtype=float))


def identity_lift(n: int) -> CoverPoint:
    return CoverPoint(np.eye(n))


def _matrix_of(p) -> np.ndarray:
    return p.A if isinstance(p, CoverPoint) else np.asarray(p, dtype=float)


def cover_lift_and_act(g, p: CoverPoint) -> CoverPoint:
    """``g.(A, t) = (g A g^T, t')`` with ``t'_j = (det A[j] / det gAg^T[j])^{1/2} t_j``."""
    g = np.asarray(g, dtype=float)
    A2 = act(g, p.A)
    old = leading_minors(p.A)[:-1]
    new = leading_minors(A2)[:-1]
    if any(m <= 0 for m in new):
        raise NotPositiveDefinite("image lost positivity")
    t2 = np.array([math.sqrt(o / m) * t for o, m, t in zip(old, new, p.t)])
    return CoverPoint(A2, t2)


def in_U_k(rep: RepTuple, p: CoverPoint, k: int) -> bool:
    """``d_delta(Id, A) < eta(rep)^k``."""
    return d_delta(np.eye(rep.n), p.A) < eta_norm(rep) ** k


# ---------------------------------------------------------------------------
# displacement bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisplacementCheck:
    """Both sides of the displacement bound for a word.

    ``lhs = d_delta(Id, rho(w).A)``.  ``rhs`` is the per-letter bound
    ``prod_i tr(g_i^T g_i)^n * d_delta(Id, A)``, which always holds.
    ``headline_rhs = eta^{(n/2)|w|} d_delta(Id, A)`` is reported alongside; it
    can fail (a single letter ``diag(2, 1/2)`` gives 16 against 4.25).
    """

    lhs: float
    rhs: float
    ok: bool
    product_rhs: float
    headline_rhs: float
    headline_ok: bool


def check_displacement_bound(rep: RepTuple, word, p: CoverPoint) -> DisplacementCheck:
    letters = parse_word(word, rep.names) if isinstance(word, str) else list(word)
    n = rep.n
    ident = np.eye(n)
    base = d_delta(ident, p.A)
    g = word_matrix(rep, letters)
    lhs = d_delta(ident, act(g, p.A))
    trace_factor = 1.0
    product = 1.0
    for name, _ in letters:
        h = rep.generator(name)
        # d(Id, h^-1.Id) = d(h.Id, Id): inverse letters use the generator itself
        trace_factor *= float(np.sum(h**2)) ** n
        product *= d_delta(ident, act(h, ident))
    rhs = trace_factor * base
    headline = eta_norm(rep) ** (n / 2 * len(letters)) * base
    slack = 1.0 + DEFAULT_RTOL
    return DisplacementCheck(
        lhs=lhs,
        rhs=rhs,
        ok=lhs <= rhs * slack,
        product_rhs=product * base,
        headline_rhs=headline,
        headline_ok=lhs <= headline * slack,
    )


# ---------------------------------------------------------------------------
# entry and minor bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixBoundsReport:
    """Slack of ``|A_ij| <= lambda_1`` and ``lambda_n^l <= det A[l]``.

    Slacks are relative differences (bound minus value over the larger of
    the two) and are ``>= 0`` up to rounding when the inequalities hold.
    """

    entry_slack: float
    minor_slack: float
    ok: bool


def _rel_gap(big: float, small: float) -> float:
    scale = max(abs(big), abs(small), 1e-300)
    return (big - small) / scale


def matrix_bounds_check(A, rtol: float = DEFAULT_RTOL) -> MatrixBoundsReport:
    """Check both bounds for a symmetric positive semidefinite ``A``."""
    A = np.asarray(A, dtype=float)
    A = (A + A.T) / 2
    lam = np.linalg.eigvalsh(A)
    lam_max, lam_min = float(lam[-1]), max(float(lam[0]), 0.0)
    entry_slack = _rel_gap(lam_max, float(np.abs(A).max()))
    minor_slack = min(
        _rel_gap(m, lam_min**ell) for ell, m in enumerate(leading_minors(A), start=1)
    )
    ok = entry_slack >= -rtol and minor_slack >= -rtol
    return MatrixBoundsReport(entry_slack, minor_slack, ok)
