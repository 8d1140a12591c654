"""Degenerating SL_2 representations over K and their limiting tree actions.

A representation with entries in the Puiseux field specializes, for each real
``t > 1``, to a real representation ``rho_t``.  As ``t`` grows,
``log d_delta(Id, rho_t(w) Id) / log t`` converges to twice the displacement
of the Gauss point under ``rho(w)`` acting on the Berkovich tree.  The factor
two comes from ``d_delta = sigma_1^4`` for the singular value ``sigma_1`` of a
2x2 matrix, against a tree step of ``2 v(sigma_1)``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .berkovich import GAUSS, dan_distance
from .errors import NonUnitDeterminant
from .field import PUISEUX_ONE, PUISEUX_ZERO, PuiseuxNumber
from .moebius import MoebiusMap, apply_disk, translation_length
from .slnr import CoverPoint, RepTuple, identity_lift, log_d_delta_sl2, parse_word


# ---------------------------------------------------------------------------
# exact 2x2 matrices over K
# ---------------------------------------------------------------------------


def _mat(rows) -> list[list[PuiseuxNumber]]:
    return [[PuiseuxNumber.coerce(e) for e in row] for row in rows]


def exact_rep(names: Sequence[str], mats) -> RepTuple:
    """An exact-mode representation; entries may be literals or PuiseuxNumbers."""
    rep = RepTuple(list(names), [_mat(m) for m in mats], exact=True)
    check_unimodular(rep)
    return rep


def _det2(m) -> PuiseuxNumber:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def check_unimodular(rep: RepTuple) -> None:
    """Require 2x2 generators with determinant 1 on every known term."""
    for name, m in zip(rep.names, rep.mats):
        if len(m) != 2 or any(len(row) != 2 for row in m):
            raise ValueError(f"generator {name} is not 2x2")
        if (_det2(m) - PUISEUX_ONE).terms:
            raise NonUnitDeterminant(f"generator {name} has determinant {_det2(m)}")


def _mul2(p, q):
    return [
        [p[i][0] * q[0][j] + p[i][1] * q[1][j] for j in range(2)] for i in range(2)
    ]


def _inv2(m):
    (a, b), (c, d) = m
    return [[d, -b], [-c, a]]


def exact_word_matrix(rep: RepTuple, word) -> list[list[PuiseuxNumber]]:
    letters = parse_word(word, rep.names) if isinstance(word, str) else word
    out = [[PUISEUX_ONE, PUISEUX_ZERO], [PUISEUX_ZERO, PUISEUX_ONE]]
    for name, power in letters:
        g = rep.generator(name)
        out = _mul2(out, g if power > 0 else _inv2(g))
    return out


def moebius_of(rep: RepTuple, word) -> MoebiusMap:
    return MoebiusMap.from_rows(exact_word_matrix(rep, word))


def translation_spectrum(rep: RepTuple, words) -> list[tuple[str, Fraction]]:
    """Exact tree translation length of ``rho(w)`` for each word."""
    check_unimodular(rep)
    return [(w, translation_length(moebius_of(rep, w))) for w in words]


def tree_limit(rep: RepTuple, word) -> Fraction:
    """``2 dan(G, rho(w) G)`` for the Gauss point ``G``."""
    g = moebius_of(rep, word)
    return 2 * dan_distance(GAUSS, apply_disk(g, GAUSS))


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecializedRep:
    """Real representation at parameter ``t``.

    ``drift[i]`` is ``|det - 1|`` of generator ``i`` before rescaling and
    ``error_bounds[i]`` the largest truncation bound among its entries.
    """

    rep: RepTuple
    t: float
    drift: tuple[float, ...]
    error_bounds: tuple[float, ...]
    overflow: bool


def specialize_rep(rep: RepTuple, t: float) -> SpecializedRep:
    if not t > 1:
        raise ValueError("specialization parameter must exceed 1")
    mats, drift, bounds = [], [], []
    overflow = False
    for name, m in zip(rep.names, rep.mats):
        cells = [[e.specialize(t) for e in row] for row in m]
        overflow |= any(c.overflow for row in cells for c in row)
        bounds.append(max(c.error_bound for row in cells for c in row))
        g = np.array([[c.value for c in row] for row in cells])
        det = float(np.linalg.det(g)) if np.all(np.isfinite(g)) else math.nan
        if not math.isfinite(det):
            overflow = True
            drift.append(math.inf)
            mats.append(g)
            continue
        if det <= 0:
            raise NonUnitDeterminant(f"generator {name} specializes to det {det} at t={t}")
        drift.append(abs(det - 1.0))
        mats.append(g / math.sqrt(det))
    return SpecializedRep(
        RepTuple(list(rep.names), mats), t, tuple(drift), tuple(bounds), overflow
    )


def _float_word(mats: dict, letters) -> np.ndarray:
    out = np.eye(2)
    for name, power in letters:
        g = mats[name]
        if power < 0:
            (a, b), (c, d) = g
            g = np.array([[d, -b], [-c, a]])
        out = out @ g
    return out


def rescaled_distance(rep: RepTuple, word, t: float, basepoint: CoverPoint | None = None) -> float:
    """``log d_delta(A, rho_t(w).A) / log t``."""
    letters = parse_word(word, rep.names) if isinstance(word, str) else word
    spec = specialize_rep(rep, t)
    g = _float_word(dict(zip(spec.rep.names, spec.rep.mats)), letters)
    if basepoint is not None:
        # d(A, gA g^T) = d(Id, h h^T) with h = L^-1 g L and A = L L^T
        L = np.linalg.cholesky(basepoint.A)
        g = np.linalg.solve(L, g @ L)
    return log_d_delta_sl2(g) / math.log(t)


# ---------------------------------------------------------------------------
# convergence tables
# ---------------------------------------------------------------------------


class Row(NamedTuple):
    word: str
    t: float
    rescaled: float
    limit: Fraction
    gap: float


@dataclass
class DegenerationJob:
    rep: RepTuple
    words: list[str]
    t_grid: list[float]
    basepoint: CoverPoint = field(default_factory=lambda: identity_lift(2))

    def __post_init__(self):
        if not self.rep.exact:
            raise ValueError("degeneration needs an exact-mode representation")
        check_unimodular(self.rep)
        if any(t <= 1 for t in self.t_grid):
            raise ValueError("t_grid values must exceed 1")
        if any(b <= a for a, b in zip(self.t_grid, self.t_grid[1:])):
            raise ValueError("t_grid must be strictly increasing")
        for w in self.words:
            parse_word(w, self.rep.names)


def _is_identity(basepoint: CoverPoint) -> bool:
    return bool(np.array_equal(basepoint.A, np.eye(2)))


def _row_task(args) -> Row:
    rep, word, t, limit, basepoint = args
    rescaled = rescaled_distance(rep, word, t, basepoint)
    return Row(word, t, rescaled, limit, abs(rescaled - float(limit)))


def convergence_table(job: DegenerationJob, jobs: int = 1) -> list[Row]:
    """Rows ``(word, t, rescaled, limit, gap)`` sorted by word, then ``t``."""
    base = None if _is_identity(job.basepoint) else job.basepoint
    limits = {w: tree_limit(job.rep, w) for w in job.words}
    tasks = [
        (job.rep, w, t, limits[w], base)
        for w in sorted(set(job.words))
        for t in job.t_grid
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(task) for task in tasks]
    return sorted(rows, key=lambda r: (r.word, r.t))


def gaps_decreasing(rows: Sequence[Row], atol: float = 1e-12) -> bool:
    """True when, for each word, the gap does not grow along ``t``."""
    for _, group in itertools.groupby(rows, key=lambda r: r.word):
        gaps = [r.gap for r in group]
        if any(b > a + atol for a, b in zip(gaps, gaps[1:])):
            return False
    return True


# ---------------------------------------------------------------------------
# shipped examples
# ---------------------------------------------------------------------------


def reduced_words(names: Sequence[str], max_length: int) -> list[str]:
    """Nonempty freely reduced words of length at most ``max_length``."""
    letters = [(n, 1) for n in names] + [(n, -1) for n in names]
    out: list[str] = []
    frontier: list[list[tuple[str, int]]] = [[]]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for letter in letters:
                if w and w[-1] == (letter[0], -letter[1]):
                    continue
                nxt.append(w + [letter])
        out.extend("".join(n + ("'" if p < 0 else "") for n, p in w) for w in nxt)
        frontier = nxt
    return out


def example_suite() -> dict[str, RepTuple]:
    """Diagonal, upper-triangular and generic one-generator examples.

    Each generator has determinant exactly 1 and leading singular-value
    coefficient 1, so the gap decays like a negative power of ``t``.
    """
    return {
        "diagonal": exact_rep(["g"], [[["x", 0], [0, "x^(-1)"]]]),
        "upper_triangular": exact_rep(["g"], [[["x", 1], [0, "x^(-1)"]]]),
        "generic": exact_rep(
            ["g"], [[["x + 1", "1/2*x^(-1/2)"], ["2*x^(-1/2)", "x^(-1)"]]]
        ),
    }


def example_jobs(t_grid=(1e2, 1e4, 1e6), max_length: int = 4) -> dict[str, DegenerationJob]:
    return {
        label: DegenerationJob(rep, reduced_words(rep.names, max_length), list(t_grid))
        for label, rep in example_suite().items()
    }
