"""Univariate polynomials in ``z`` over the Puiseux field or its complexification."""

from __future__ import annotations

from .field import ComplexPuiseux, PuiseuxNumber, parse_literal


def _coerce_coeff(c):
    if isinstance(c, (PuiseuxNumber, ComplexPuiseux)):
        return c
    if isinstance(c, str):
        return parse_literal(c)
    if isinstance(c, (list, tuple)) and len(c) == 2:
        return ComplexPuiseux(_coerce_coeff(c[0]), _coerce_coeff(c[1]))
    return PuiseuxNumber.constant(c)


def _is_zero(c) -> bool:
    return c.is_zero()


class Poly:
    """Dense polynomial; ``coeffs[k]`` multiplies ``z**k``.

    Trailing exact zeros are stripped, so ``degree`` is -1 only for the zero
    polynomial.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def linear(cls, root) -> "Poly":
        """``z - root``."""
        return cls([-_coerce_coeff(root), 1])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real(self) -> bool:
        return all(
            isinstance(c, PuiseuxNumber) or c.is_real() for c in self.coeffs
        )

    def leading_coefficient(self):
        if not self.coeffs:
            return PuiseuxNumber.constant(0)
        return self.coeffs[-1]

    def __add__(self, other):
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else None
            b = other.coeffs[k] if k < len(other.coeffs) else None
            out.append(b if a is None else a if b is None else a + b)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return _coerce_poly(other) - self

    def __mul__(self, other):
        other = _coerce_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if _is_zero(b):
                    continue
                p = a * b
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        return Poly([PuiseuxNumber.constant(0) if c is None else c for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly([1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, v):
        """Horner evaluation at a field element."""
        if not self.coeffs:
            return PuiseuxNumber.constant(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * v + c
        return acc

    def taylor_shift(self, v) -> list:
        """Coefficients ``a_n`` with ``f(z) = sum a_n (z - v)^n``.

        Computed by repeated synthetic division, exactly.
        """
        work = list(self.coeffs)
        out = []
        while work:
            # divide work by (z - v): remainder is work evaluated at v
            acc = work[-1]
            quotient = [acc]
            for c in reversed(work[:-1]):
                acc = acc * v + c
                quotient.append(acc)
            out.append(quotient.pop())
            work = list(reversed(quotient))
        return out

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    def conjugate(self) -> "Poly":
        return Poly(
            [c.conjugate() if isinstance(c, ComplexPuiseux) else c for c in self.coeffs]
        )

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            ComplexPuiseux.coerce(a) == ComplexPuiseux.coerce(b)
            for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(tuple(ComplexPuiseux.coerce(c) for c in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if k == 0 else "z" if k == 1 else f"z^{k}"
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def _coerce_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly([value])


def multiplicity(f: Poly, u) -> int:
    """Order of vanishing of ``f`` at ``u``, by repeated synthetic division."""
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes to infinite order")
    for j, a in enumerate(f.taylor_shift(u)):
        if not a.is_zero():
            return j
    raise AssertionError("unreachable: leading Taylor coefficient is nonzero")

