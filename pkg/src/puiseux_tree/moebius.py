"""PSL_2 action on the Berkovich line and translation lengths."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .berkovich import (
    GAUSS,
    INFINITY,
    BerkPoint,
    dan_distance,
    disk,
    path_point,
    type1,
)
from .errors import DivisionByZero, NonUnitDeterminant
from .field import ComplexPuiseux


@dataclass(frozen=True, init=False)
class MoebiusMap:
    """``z -> (a z + b) / (c z + d)`` with entries in K or K(sqrt(-1))."""

    a: ComplexPuiseux
    b: ComplexPuiseux
    c: ComplexPuiseux
    d: ComplexPuiseux

    def __init__(self, a, b, c, d):
        for name, value in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, ComplexPuiseux.coerce(value))
        if self.det.is_zero():
            raise DivisionByZero("singular matrix does not define a Moebius map")

    @classmethod
    def from_rows(cls, rows) -> "MoebiusMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> ComplexPuiseux:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> ComplexPuiseux:
        return self.a + self.d

    def is_real(self) -> bool:
        return all(e.is_real() for e in (self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def adjugate(self) -> "MoebiusMap":
        """Projective inverse ``[[d, -b], [-c, a]]``."""
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def projectively_equal(self, other: "MoebiusMap") -> bool:
        u = (self.a, self.b, self.c, self.d)
        w = (other.a, other.b, other.c, other.d)
        return all(
            (u[i] * w[j] - u[j] * w[i]).is_zero()
            for i in range(4)
            for j in range(i + 1, 4)
        )

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


def apply_point(g: MoebiusMap, p: BerkPoint, prec=None) -> BerkPoint:
    """Image of a type-1 point; the pole goes to infinity."""
    if p.is_disk:
        raise ValueError("apply_point expects a type-1 point")
    if p.is_infinity:
        if g.c.is_zero():
            return INFINITY
        return type1(g.a * g.c.inv(prec))
    v = p.center
    den = g.c * v + g.d
    if den.log_abs().is_zero:
        return INFINITY
    return type1((g.a * v + g.b) * den.inv(prec))


def _quotient(num: ComplexPuiseux, den: ComplexPuiseux, bound, prec) -> ComplexPuiseux:
    """``num / den`` known at least down to ``x^bound``.

    Without an explicit ``prec`` the inverse is expanded just far enough for
    the product to be determined above ``bound``.
    """
    if num.is_zero():
        return num
    if prec is None:
        prec = bound - num.log_abs().exponent - 1
    return num * den.inv(prec)


def apply_disk(g: MoebiusMap, p: BerkPoint, prec=None) -> BerkPoint:
    """Image of ``D(v, e^t)``.

    With the pole ``-d/c`` outside the disk the image is
    ``D(g(v), e^t |det| / |c v + d|^2)``.  With the pole inside, ``g`` swaps
    the disk's complement with a disk around ``a/c`` and the image is
    ``D(a/c, |det| / (|c|^2 e^t))``.
    """
    if not p.is_disk:
        raise ValueError("apply_disk expects a disk point")
    v, t = p.center, p.log_radius
    log_det = g.det.log_abs().exponent
    if g.c.is_zero():
        t2 = t + log_det - 2 * g.d.log_abs().exponent
        return disk(_quotient(g.a * v + g.b, g.d, t2, prec), t2)
    pole_gap = (g.c * v + g.d).log_abs()
    log_c = g.c.log_abs().exponent
    if pole_gap.is_zero or pole_gap.exponent <= log_c + t:
        t2 = log_det - 2 * log_c - t
        return disk(_quotient(g.a, g.c, t2, prec), t2)
    t2 = t + log_det - 2 * pole_gap.exponent
    return disk(_quotient(g.a * v + g.b, g.c * v + g.d, t2, prec), t2)


def apply(g: MoebiusMap, p: BerkPoint, prec=None) -> BerkPoint:
    if p.is_disk:
        return apply_disk(g, p, prec)
    return apply_point(g, p, prec)


def translation_length(g: MoebiusMap) -> Fraction:
    """``2 max(0, log|tr g| - log|det g| / 2)``: the minimal displacement in the tree."""
    det = g.det
    if g.is_real() and det.re.sign() < 0:
        raise NonUnitDeterminant("real map with negative determinant is not in PSL_2(K)")
    tr = g.trace.log_abs()
    if tr.is_zero:
        return Fraction(0)
    excess = tr.exponent - det.log_abs().exponent / 2
    return 2 * max(Fraction(0), excess)


def displacement(g: MoebiusMap, p: BerkPoint) -> Fraction:
    return dan_distance(p, apply_disk(g, p))


def axis_point(g: MoebiusMap, base: BerkPoint = GAUSS) -> BerkPoint:
    """A point realizing the minimal displacement of ``g``.

    The projection of ``base`` onto the axis (or fixed set) of ``g`` lies on
    ``[base, g base]`` at distance ``(d(base, g base) - length) / 2``.
    """
    image = apply_disk(g, base)
    d = dan_distance(base, image)
    return path_point(base, image, (d - translation_length(g)) / 2)
