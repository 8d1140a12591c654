"""Real spectrum of the affine line K[z] over the Puiseux field.

The prime cones of K[z] are the evaluation points ``u``, the one-sided
points ``u+`` and ``u-`` just right and left of ``u``, the two ends
``+inf`` and ``-inf``, and the cuts of K without a least upper or greatest
lower bound.  The last kind has no finite description; it is given here by
a monotone ladder of elements approaching the cut, and a sign is read off
only once it has been constant over the last ``budget`` rungs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LadderExhausted
from .field import ComplexPuiseux, PuiseuxNumber
from .poly import Poly

VARIANTS = ("point", "right_of", "left_of", "plus_inf", "minus_inf", "free_cut")


@dataclass(frozen=True)
class SpectrumLinePoint:
    variant: str
    u: PuiseuxNumber | None = None
    ladder: tuple = field(default_factory=tuple)
    budget: int = 3

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown spectrum point variant {self.variant!r}")
        if self.variant in ("point", "right_of", "left_of"):
            if self.u is None:
                raise ValueError(f"{self.variant} needs an element u")
            object.__setattr__(self, "u", PuiseuxNumber.coerce(self.u))
        if self.variant == "free_cut":
            ladder = tuple(PuiseuxNumber.coerce(a) for a in self.ladder)
            if len(ladder) < 2:
                raise ValueError("a free cut needs at least two rungs")
            direction = ladder[1].compare(ladder[0])
            if direction == 0 or any(
                b.compare(a) != direction for a, b in zip(ladder, ladder[1:])
            ):
                raise ValueError("free-cut ladder must be strictly monotone")
            if self.budget < 1:
                raise ValueError("budget must be positive")
            object.__setattr__(self, "ladder", ladder)

    def __str__(self):
        return {
            "point": lambda: f"{self.u}",
            "right_of": lambda: f"({self.u})+",
            "left_of": lambda: f"({self.u})-",
            "plus_inf": lambda: "+inf",
            "minus_inf": lambda: "-inf",
            "free_cut": lambda: f"cut[{self.ladder[-1]}...]",
        }[self.variant]()


def point(u) -> SpectrumLinePoint:
    return SpectrumLinePoint("point", u)


def right_of(u) -> SpectrumLinePoint:
    return SpectrumLinePoint("right_of", u)


def left_of(u) -> SpectrumLinePoint:
    return SpectrumLinePoint("left_of", u)


PLUS_INF = SpectrumLinePoint("plus_inf")
MINUS_INF = SpectrumLinePoint("minus_inf")


def free_cut(ladder, budget: int = 3) -> SpectrumLinePoint:
    return SpectrumLinePoint("free_cut", None, tuple(ladder), budget)


def _poly(f) -> Poly:
    f = f if isinstance(f, Poly) else Poly(f)
    if any(isinstance(c, ComplexPuiseux) for c in f.coeffs) and f.is_real():
        f = Poly([c.re if isinstance(c, ComplexPuiseux) else c for c in f.coeffs])
    return f


def sign_at(p: SpectrumLinePoint, f) -> int:
    """Sign of ``f`` in the ordering of the prime cone ``p``."""
    f = _poly(f)
    if not f.is_real():
        raise ValueError("polynomial must have coefficients in K")
    if f.is_zero():
        return 0
    if p.variant == "point":
        return f(p.u).sign()
    if p.variant in ("right_of", "left_of"):
        for j, a in enumerate(f.taylor_shift(p.u)):
            if not a.is_zero():
                s = a.sign()
                return s if p.variant == "right_of" or j % 2 == 0 else -s
        raise AssertionError("nonzero polynomial has a nonzero Taylor coefficient")
    if p.variant == "plus_inf":
        return f.leading_coefficient().sign()
    if p.variant == "minus_inf":
        s = f.leading_coefficient().sign()
        return s if f.degree % 2 == 0 else -s
    signs = [f(rung).sign() for rung in p.ladder]
    tail = signs[-p.budget :]
    if len(tail) < p.budget or len(set(tail)) != 1 or tail[0] == 0:
        raise LadderExhausted(
            f"sign of {f} not stable over the last {p.budget} rungs: {signs}"
        )
    return tail[0]


def in_basic_open(p: SpectrumLinePoint, fs) -> bool:
    """Membership in ``U(f_1, ..., f_k) = {f_i > 0 for all i}``."""
    return all(sign_at(p, f) > 0 for f in fs)


@dataclass(frozen=True)
class Classification:
    closed: bool
    archimedean: bool
    closure: frozenset


def classify(p: SpectrumLinePoint) -> Classification:
    """Closedness, Archimedean-ness and closure of a prime cone.

    ``u+`` and ``u-`` specialize to ``u``; the ends are closed but carry an
    element bigger (or smaller) than all of K, so they are not Archimedean.
    """
    if p.variant in ("right_of", "left_of"):
        return Classification(False, False, frozenset({p, point(p.u)}))
    archimedean = p.variant in ("point", "free_cut")
    return Classification(True, archimedean, frozenset({p}))
