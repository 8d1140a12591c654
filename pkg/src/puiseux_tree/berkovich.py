"""The Berkovich projective line over F = K(sqrt(-1)) in the closed-disk model.

Every point other than infinity is either a classical point (type 1) or the
sup-seminorm of a closed disk ``D(v, e^t)`` with rational log-radius ``t``
(type 2).  Disk centers are canonicalized by dropping every term of exponent
``<= t`` from both the real and imaginary parts; two disks are then equal
exactly when their canonical centers and radii coincide.

Points entered in the inversion chart ``w = 1/z`` are converted to the
affine chart on construction, so the partial order, join and metric are all
computed in one coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DistanceInfinite,
    InfinityHasNoDiameter,
    OutOfRange,
    PointAtInfinity,
)
from .field import ZERO, ComplexPuiseux, LogValue, as_rational
from .poly import Poly


@dataclass(frozen=True)
class BerkPoint:
    """A point of the Berkovich projective line.

    ``kind`` is ``"type1"`` or ``"disk"``.  A type-1 point with ``center=None``
    is the point at infinity; disks always have a finite center and a
    ``log_radius``.
    """

    kind: str
    center: ComplexPuiseux | None
    log_radius: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.center is None

    @property
    def is_disk(self) -> bool:
        return self.kind == "disk"

    @property
    def point_type(self) -> int:
        return 2 if self.is_disk else 1

    def __str__(self):
        if self.is_infinity:
            return "inf"
        if self.is_disk:
            return f"D({self.center}, e^({self.log_radius}))"
        return f"[{self.center}]"


INFINITY = BerkPoint("type1", None, None)


def type1(v) -> BerkPoint:
    """The classical point ``v`` (``None`` or ``"inf"`` gives infinity)."""
    if v is None or (isinstance(v, str) and v == "inf"):
        return INFINITY
    return BerkPoint("type1", ComplexPuiseux.coerce(v), None)


def disk(center, log_radius) -> BerkPoint:
    """The point ``D(center, e^log_radius)``, with canonical center."""
    t = as_rational(log_radius)
    c = ComplexPuiseux.coerce(center).terms_above(t)
    return BerkPoint("disk", c, t)


GAUSS = disk(0, 0)


def from_chart_w(center, log_radius=None) -> BerkPoint:
    """Convert a point given in the coordinate ``w = 1/z`` to the ``z`` chart."""
    w = ComplexPuiseux.coerce(center)
    if log_radius is None:
        return INFINITY if w.is_zero() else type1(w.inv())
    s = as_rational(log_radius)
    lw = w.log_abs()
    if lw.is_zero or lw.exponent <= s:
        # the disk contains w = 0, i.e. z = infinity: D_w(0, e^s) is D_z(0, e^-s)
        return disk(0, -s)
    # w -> 1/w maps D(w0, r) to D(1/w0, r / |w0|^2) when 0 is outside
    t = s - 2 * lw.exponent
    # terms of 1/w below the new radius are discarded by ``disk`` anyway
    return disk(w.inv(t - 1), t)


# ---------------------------------------------------------------------------
# seminorms
# ---------------------------------------------------------------------------


def seminorm_eval(p: BerkPoint, f: Poly) -> LogValue:
    """The multiplicative seminorm of ``p`` evaluated on ``f``.

    For a disk ``D(v, r)`` this is ``max_n |a_n| r^n`` over the Taylor
    coefficients of ``f`` at ``v``.
    """
    if not isinstance(f, Poly):
        f = Poly([f])
    if p.is_infinity:
        if f.degree <= 0:
            return f.leading_coefficient().log_abs() if f.coeffs else ZERO
        raise PointAtInfinity("nonconstant polynomial is unbounded at infinity")
    if not p.is_disk:
        return f(p.center).log_abs()
    radius = LogValue(p.log_radius)
    best = ZERO
    for n, a in enumerate(f.taylor_shift(p.center)):
        if a.is_zero():
            continue
        value = a.log_abs() * radius**n
        if value > best:
            best = value
    return best


# ---------------------------------------------------------------------------
# order, join and metric
# ---------------------------------------------------------------------------


def _log_radius(p: BerkPoint):
    return p.log_radius if p.is_disk else None


def join(p: BerkPoint, q: BerkPoint) -> BerkPoint:
    """Least upper bound ``D(v1, max{r1, r2, |v2 - v1|})``."""
    if p.is_infinity or q.is_infinity:
        return INFINITY
    candidates = [t for t in (_log_radius(p), _log_radius(q)) if t is not None]
    gap = (q.center - p.center).log_abs()
    if not gap.is_zero:
        candidates.append(gap.exponent)
    if not candidates:
        return p
    return disk(p.center, max(candidates))


def leq(p: BerkPoint, q: BerkPoint) -> bool:
    """``p <= q`` in the seminorm order (``p`` lies below ``q`` toward the leaves)."""
    return join(p, q) == q


def diam(p: BerkPoint) -> LogValue:
    if p.is_infinity:
        raise InfinityHasNoDiameter("the point at infinity has no diameter")
    return LogValue(p.log_radius) if p.is_disk else ZERO


def _require_disk(p: BerkPoint):
    if not p.is_disk:
        raise DistanceInfinite(f"{p} is a type-1 point; the tree metric is infinite there")


def dan_distance(p: BerkPoint, q: BerkPoint) -> Fraction:
    """Tree distance ``log(diam(p v q)^2 / (diam p * diam q))``, exact."""
    _require_disk(p)
    _require_disk(q)
    t = join(p, q).log_radius
    return 2 * t - p.log_radius - q.log_radius


def path_point(p: BerkPoint, q: BerkPoint, s) -> BerkPoint:
    """The point of the arc ``[p, q]`` at distance ``s`` from ``p``."""
    _require_disk(p)
    _require_disk(q)
    s = as_rational(s)
    top = join(p, q).log_radius
    up = top - p.log_radius
    total = up + top - q.log_radius
    if s < 0 or s > total:
        raise OutOfRange(f"s={s} outside [0, {total}]")
    if s <= up:
        return disk(p.center, p.log_radius + s)
    return disk(q.center, top - (s - up))


# ---------------------------------------------------------------------------
# basic open sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasicOpenSpec:
    """A basic open set of the Berkovich line.

    ``shape`` is one of ``"open_disk"`` (``eta(z - v) < e^t``),
    ``"open_disk_minus_closed"`` (the open disk minus finitely many closed
    disks) and ``"complement_of_closed"`` (everything outside finitely many
    closed disks, infinity included).
    """

    shape: str
    center: ComplexPuiseux | None = None
    log_radius: Fraction | None = None
    excluded: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.shape not in ("open_disk", "open_disk_minus_closed", "complement_of_closed"):
            raise ValueError(f"unknown basic open shape {self.shape!r}")
        excluded = tuple(
            (ComplexPuiseux.coerce(v), as_rational(t)) for v, t in self.excluded
        )
        object.__setattr__(self, "excluded", excluded)
        if self.center is not None:
            object.__setattr__(self, "center", ComplexPuiseux.coerce(self.center))
        if self.log_radius is not None:
            object.__setattr__(self, "log_radius", as_rational(self.log_radius))


def _distance_to(p: BerkPoint, v: ComplexPuiseux) -> LogValue:
    return seminorm_eval(p, Poly.linear(v))


def _in_closed_disk(p: BerkPoint, v, t) -> bool:
    if p.is_infinity:
        return False
    return _distance_to(p, v) <= LogValue(t)


def in_basic_open(p: BerkPoint, u: BasicOpenSpec) -> bool:
    outside = not any(_in_closed_disk(p, v, t) for v, t in u.excluded)
    if u.shape == "complement_of_closed":
        return outside
    if p.is_infinity:
        return False
    inside = _distance_to(p, u.center) < LogValue(u.log_radius)
    if u.shape == "open_disk":
        return inside
    return inside and outside

