"""The real subtree: points of the Berkovich line fixed by complex conjugation.

A point is real when it is a limit of disks meeting the real axis A^1(K).
Equivalently its seminorm turns sums of squares of real polynomials into
maxima: ``eta(f_1^2 + ... + f_q^2) = max_i eta(f_i^2)``.  Negative verdicts
come with a family of real polynomials on which that equality fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .berkovich import (
    BerkPoint,
    INFINITY,
    dan_distance,
    disk,
    path_point,
    seminorm_eval,
    type1,
)
from .errors import DistanceInfinite
from .field import LogValue
from .poly import Poly


@dataclass(frozen=True)
class MaxSquaresCheck:
    holds: bool
    lhs: LogValue
    rhs: LogValue


@dataclass(frozen=True)
class RealnessCertificate:
    """Outcome of :func:`is_real_point`.

    ``witness`` is ``"galois_fixed"`` for real points.  For other points it is
    ``"violating_family"`` and ``family``, ``lhs`` and ``rhs`` hold the
    polynomials and the two sides of the failed equality.
    """

    verdict: bool
    witness: str
    family: tuple = ()
    lhs: LogValue | None = None
    rhs: LogValue | None = None

    def reverify(self, p: BerkPoint) -> bool:
        """Recompute the certificate's evidence against ``p``."""
        if self.verdict:
            return galois_conjugate(p) == p
        check = check_max_squares(p, list(self.family))
        return (not check.holds) and check.lhs == self.lhs and check.rhs == self.rhs


def galois_conjugate(p: BerkPoint) -> BerkPoint:
    if p.is_infinity:
        return INFINITY
    if p.is_disk:
        return disk(p.center.conjugate(), p.log_radius)
    return type1(p.center.conjugate())


def check_max_squares(p: BerkPoint, fs) -> MaxSquaresCheck:
    """Compare ``eta(sum f_i^2)`` with ``max_i eta(f_i^2)`` exactly."""
    fs = [f if isinstance(f, Poly) else Poly([f]) for f in fs]
    if not fs:
        raise ValueError("need at least one polynomial")
    if not all(f.is_real() for f in fs):
        raise ValueError("the family must have coefficients in K")
    total = Poly()
    for f in fs:
        total = total + f * f
    lhs = seminorm_eval(p, total)
    rhs = max(seminorm_eval(p, f) ** 2 for f in fs)
    return MaxSquaresCheck(lhs == rhs, lhs, rhs)


def witness_family(p: BerkPoint) -> list[Poly]:
    """``[z - re(v), im(v)]``: its squares sum to ``(z - v)(z - conj v)``."""
    v = p.center
    return [Poly.linear(v.re), Poly([v.im])]


def is_real_point(p: BerkPoint) -> RealnessCertificate:
    """Decide realness by the disk criterion ``|im(center)| <= radius``.

    Canonical centers already drop the terms below the radius, so the
    criterion reduces to the imaginary part of the canonical center being 0.
    """
    if p.is_infinity or p.center.im.is_zero():
        return RealnessCertificate(True, "galois_fixed")
    family = witness_family(p)
    check = check_max_squares(p, family)
    if check.holds:
        raise AssertionError(f"canonical witness family failed to separate {p}")
    return RealnessCertificate(False, "violating_family", tuple(family), check.lhs, check.rhs)


def search_families(p: BerkPoint) -> list[list[Poly]]:
    """Deterministic families used to cross-check :func:`is_real_point`."""
    z = Poly.z()
    families = [[z, Poly([1])], [Poly([1])], [z - 1, Poly([1])]]
    if not p.is_infinity:
        families.append(witness_family(p))
        families.append([Poly.linear(p.center.re)])
    return families


def max_squares_verdict(p: BerkPoint) -> bool:
    """True when every family in :func:`search_families` satisfies the equality."""
    if p.is_infinity:
        return True
    return all(check_max_squares(p, fam).holds for fam in search_families(p))


def project_to_real_tree(p: BerkPoint) -> BerkPoint:
    """Midpoint of the arc from ``p`` to its conjugate: the nearest real point."""
    if not p.is_disk:
        raise DistanceInfinite("projection is defined on disk points only")
    q = galois_conjugate(p)
    return path_point(p, q, dan_distance(p, q) / 2)

