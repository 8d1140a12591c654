"""Truncated real Puiseux series and their complexification.

A :class:`PuiseuxNumber` is a finite sum ``sum c_k x^{e_k}`` with rational
exponents and rational coefficients, optionally followed by an error term
``O(x^{known_below})`` meaning every omitted term has exponent strictly below
``known_below``.  The variable ``x`` is infinitely large: the ordering is
decided by the sign of the leading coefficient.

Absolute values are kept in logarithmic form (:class:`LogValue`): the
absolute value of a nonzero series is ``e^q`` where ``q`` is its leading
exponent.  With this sign convention the absolute value is multiplicative,
ultrametric and monotone with respect to the order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, NamedTuple

from .errors import (
    DivisionByZero,
    IrrationalCoefficient,
    LiteralSyntaxError,
    NegativeInput,
    PrecisionExhausted,
)

#: Default truncation bound for series produced by inversion and square roots.
DEFAULT_PRECISION = Fraction(-40)


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`; binary floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("binary floats are not accepted as exact rationals")
    # Decimal and other exact numeric types
    return Fraction(value)


# ---------------------------------------------------------------------------
# Logarithmic absolute values
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class LogValue:
    """An absolute value ``e^exponent``; ``exponent=None`` encodes the value 0."""

    exponent: Fraction | None = None

    @classmethod
    def of(cls, exponent) -> "LogValue":
        return cls(as_rational(exponent))

    @property
    def kind(self) -> str:
        return "zero" if self.exponent is None else "finite"

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __mul__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        if self.exponent is None or other.exponent is None:
            return ZERO
        return LogValue(self.exponent + other.exponent)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        if other.exponent is None:
            raise DivisionByZero("division by the zero absolute value")
        if self.exponent is None:
            return ZERO
        return LogValue(self.exponent - other.exponent)

    def __pow__(self, n: int) -> "LogValue":
        if n == 0:
            return ONE
        if self.exponent is None:
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return ZERO
        return LogValue(self.exponent * n)

    def __lt__(self, other: "LogValue") -> bool:
        if not isinstance(other, LogValue):
            return NotImplemented
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent < other.exponent

    def to_float(self) -> float:
        return 0.0 if self.exponent is None else math.exp(self.exponent)

    def __str__(self) -> str:
        return "0" if self.exponent is None else f"e^({self.exponent})"


ZERO = LogValue(None)
ONE = LogValue(Fraction(0))


# ---------------------------------------------------------------------------
# Real Puiseux series
# ---------------------------------------------------------------------------


class Specialized(NamedTuple):
    value: float
    error_bound: float
    overflow: bool


def _merge_kb(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class PuiseuxNumber:
    """An element of the real Puiseux field, truncated at ``known_below``.

    ``terms`` are ``(exponent, coefficient)`` pairs in strictly descending
    exponent order with nonzero coefficients.  ``known_below=None`` means the
    series is exact (a finite sum).
    """

    __slots__ = ("_terms", "_kb")

    def __init__(self, terms: Iterable | dict = (), known_below=None):
        items = terms.items() if isinstance(terms, dict) else terms
        kb = None if known_below is None else as_rational(known_below)
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = as_rational(e)
            acc[e] = acc.get(e, 0) + as_rational(c)
        self._terms = tuple(
            sorted(
                ((e, c) for e, c in acc.items() if c and (kb is None or e >= kb)),
                reverse=True,
            )
        )
        self._kb = kb

    @classmethod
    def _raw(cls, terms: tuple, kb) -> "PuiseuxNumber":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._kb = kb
        return obj

    @classmethod
    def constant(cls, c) -> "PuiseuxNumber":
        c = as_rational(c)
        return cls._raw(((Fraction(0), c),) if c else (), None)

    @classmethod
    def monomial(cls, coeff, exponent) -> "PuiseuxNumber":
        c = as_rational(coeff)
        return cls._raw(((as_rational(exponent), c),) if c else (), None)

    @classmethod
    def coerce(cls, value) -> "PuiseuxNumber":
        if isinstance(value, PuiseuxNumber):
            return value
        if isinstance(value, str):
            return parse_literal(value)
        return cls.constant(value)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def known_below(self) -> Fraction | None:
        return self._kb

    @property
    def exact(self) -> bool:
        return self._kb is None

    @property
    def ramification(self) -> int:
        m = 1
        for e, _ in self._terms:
            m = math.lcm(m, e.denominator)
        return m

    def is_zero(self) -> bool:
        """True only for the exact zero."""
        return self._kb is None and not self._terms

    def is_monomial(self) -> bool:
        return self._kb is None and len(self._terms) == 1

    def leading(self) -> tuple[Fraction, Fraction]:
        """Leading ``(exponent, coefficient)``.

        Raises :class:`DivisionByZero` for the exact zero and
        :class:`PrecisionExhausted` when every known term has cancelled.
        """
        if self._terms:
            return self._terms[0]
        if self._kb is None:
            raise DivisionByZero("the zero series has no leading term")
        raise PrecisionExhausted(
            f"all known terms cancel; value is O(x^({self._kb}))"
        )

    def top(self) -> tuple[Fraction | None, bool]:
        """``(exponent, known)``: the leading exponent, or the error bound of an
        inexact zero (``known=False``); ``(None, True)`` for the exact zero."""
        if self._terms:
            return self._terms[0][0], True
        if self._kb is None:
            return None, True
        return self._kb, False

    def sign(self) -> int:
        if self._terms:
            return 1 if self._terms[0][1] > 0 else -1
        if self._kb is None:
            return 0
        raise PrecisionExhausted(
            f"sign undecidable; value is O(x^({self._kb}))"
        )

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> "PuiseuxNumber":
        return PuiseuxNumber._raw(tuple((e, -c) for e, c in self._terms), self._kb)

    def __pos__(self) -> "PuiseuxNumber":
        return self

    def __add__(self, other) -> "PuiseuxNumber":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        kb = _merge_kb(self._kb, other._kb)
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        terms = tuple(
            sorted(
                ((e, c) for e, c in acc.items() if c and (kb is None or e >= kb)),
                reverse=True,
            )
        )
        return PuiseuxNumber._raw(terms, kb)

    __radd__ = __add__

    def __sub__(self, other) -> "PuiseuxNumber":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PuiseuxNumber":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PuiseuxNumber":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return PUISEUX_ZERO
        kb = None
        if self._kb is not None:
            kb = other.top()[0] + self._kb
        if other._kb is not None:
            kb = _merge_kb(kb, self.top()[0] + other._kb)
        acc: dict[Fraction, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                if kb is not None and e < kb:
                    continue
                acc[e] = acc.get(e, 0) + c1 * c2
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True))
        return PuiseuxNumber._raw(terms, kb)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PuiseuxNumber":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "PuiseuxNumber":
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int) -> "PuiseuxNumber":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inv()
        result = PUISEUX_ONE
        for _ in range(abs(n)):
            result = result * base
        return result

    def scale(self, coeff, shift) -> "PuiseuxNumber":
        """Multiply by the exact monomial ``coeff * x^shift``."""
        coeff = as_rational(coeff)
        shift = as_rational(shift)
        if not coeff:
            return PUISEUX_ZERO
        kb = None if self._kb is None else self._kb + shift
        return PuiseuxNumber._raw(
            tuple((e + shift, c * coeff) for e, c in self._terms), kb
        )

    def truncate(self, below) -> "PuiseuxNumber":
        """Drop terms with exponent < ``below`` and record the loss."""
        below = as_rational(below)
        kb = _merge_kb(self._kb, below)
        return PuiseuxNumber._raw(tuple(t for t in self._terms if t[0] >= kb), kb)

    def terms_above(self, bound) -> "PuiseuxNumber":
        """Exact series of the terms with exponent strictly above ``bound``.

        Raises :class:`PrecisionExhausted` when some unknown term could lie
        above ``bound``.
        """
        bound = as_rational(bound)
        if self._kb is not None and self._kb > bound:
            raise PrecisionExhausted(
                f"terms between x^({bound}) and x^({self._kb}) are unknown"
            )
        return PuiseuxNumber._raw(tuple(t for t in self._terms if t[0] > bound), None)

    def _unit_tail(self) -> tuple[Fraction, Fraction, "PuiseuxNumber"]:
        """Split ``self = c x^e (1 + u)`` with every exponent of ``u`` negative."""
        e, c = self.leading()
        u_terms = tuple((ei - e, ci / c) for ei, ci in self._terms[1:])
        u_kb = None if self._kb is None else self._kb - e
        return e, c, PuiseuxNumber._raw(u_terms, u_kb)

    def inv(self, prec=None) -> "PuiseuxNumber":
        """Multiplicative inverse, expanded down to ``x^prec``."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        e, c, u = self._unit_tail()
        if u.is_zero():
            return PuiseuxNumber._raw(((-e, 1 / c),), None)
        prec = DEFAULT_PRECISION if prec is None else as_rational(prec)
        relative = min(prec, -e) + e
        total = PUISEUX_ONE
        term = PUISEUX_ONE
        while True:
            term = (-(term * u)).truncate(relative)
            total = total + term
            if not term.terms:
                break
        return total.scale(1 / c, -e)

    def sqrt(self, prec=None) -> "PuiseuxNumber":
        """Positive square root, expanded down to ``x^prec``."""
        s = self.sign()
        if s < 0:
            raise NegativeInput("square root of a negative element")
        if s == 0:
            return PUISEUX_ZERO
        e, c, u = self._unit_tail()
        root_c = _rational_sqrt(c)
        if u.is_zero():
            return PuiseuxNumber._raw(((e / 2, root_c),), None)
        prec = DEFAULT_PRECISION if prec is None else as_rational(prec)
        relative = min(prec, e / 2) - e / 2
        total = PUISEUX_ONE
        power = PUISEUX_ONE
        binom = Fraction(1)
        k = 0
        while True:
            k += 1
            binom = binom * (Fraction(1, 2) - (k - 1)) / k
            power = (power * u).truncate(relative)
            total = total + power.scale(binom, 0).truncate(relative)
            if not power.terms:
                break
        return total.scale(root_c, e / 2)

    # -- order ------------------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0 or 1 as ``self`` is below, equal to or above ``other``."""
        return (self - _coerce_real(other)).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, ComplexPuiseux):
            return other == self
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms and self._kb == other._kb

    def __hash__(self):
        return hash((self._terms, self._kb))

    def __bool__(self):
        return not self.is_zero()

    # -- valuation and specialization -------------------------------------

    def log_abs(self, base_exponent=1) -> LogValue:
        """Logarithmic absolute value with respect to the big element
        ``x^base_exponent``: the leading exponent divided by ``base_exponent``."""
        if self.is_zero():
            return ZERO
        e, _ = self.leading()
        return LogValue(e / as_rational(base_exponent))

    def specialize(self, t: float) -> Specialized:
        """Evaluate the stored terms at ``x = t`` in floating point."""
        if not t > 1:
            raise ValueError("specialization parameter must exceed 1")
        overflow = False
        total = 0.0
        for e, c in self._terms:
            try:
                total += float(c) * t ** float(e)
            except OverflowError:
                overflow = True
                total = math.copysign(math.inf, float(c))
                break
        if self._kb is None:
            error = 0.0
        else:
            m = math.lcm(self.ramification, self._kb.denominator)
            scale = max((abs(float(c)) for _, c in self._terms), default=1.0)
            try:
                error = scale * t ** float(self._kb) / (1.0 - t ** (-1.0 / m))
            except OverflowError:
                error = math.inf
                overflow = True
        if math.isinf(total):
            overflow = True
        return Specialized(total, error, overflow)

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_literal(self)

    def __repr__(self) -> str:
        return f"PuiseuxNumber({format_literal(self)!r})"


def _coerce_real(value):
    if isinstance(value, PuiseuxNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return PuiseuxNumber.constant(value)
    return NotImplemented


def _rational_sqrt(c: Fraction) -> Fraction:
    num, den = c.numerator, c.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise IrrationalCoefficient(f"leading coefficient {c} is not a rational square")
    return Fraction(rn, rd)


PUISEUX_ZERO = PuiseuxNumber._raw((), None)
PUISEUX_ONE = PuiseuxNumber._raw(((Fraction(0), Fraction(1)),), None)
X = PuiseuxNumber._raw(((Fraction(1), Fraction(1)),), None)


# module-level spellings of the field operations -----------------------------


def field_arith(op: str, a, b=None, prec=None) -> PuiseuxNumber:
    a = PuiseuxNumber.coerce(a)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv(prec)
    b = PuiseuxNumber.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field operation {op!r}")


def compare(a, b) -> str:
    return {-1: "LT", 0: "EQ", 1: "GT"}[PuiseuxNumber.coerce(a).compare(PuiseuxNumber.coerce(b))]


def sqrt_pos(a, prec=None) -> PuiseuxNumber:
    return PuiseuxNumber.coerce(a).sqrt(prec)


def log_abs(a, base_exponent=1) -> LogValue:
    if isinstance(a, ComplexPuiseux):
        return a.log_abs(base_exponent)
    return PuiseuxNumber.coerce(a).log_abs(base_exponent)


def specialize(a, t: float) -> Specialized:
    return PuiseuxNumber.coerce(a).specialize(t)


def big_ball_index(values) -> int:
    """Least ``k >= 0`` with ``sum v_i^2 < x^k``."""
    values = [PuiseuxNumber.coerce(v) for v in values]
    if not values:
        raise ValueError("big_ball_index needs a nonempty tuple")
    total = PUISEUX_ZERO
    for v in values:
        total = total + v * v
    if total.is_zero():
        return 0
    e, c = total.leading()
    if e.denominator != 1:
        k = math.floor(e) + 1
    else:
        k = int(e) if total.compare(X ** int(e)) < 0 else int(e) + 1
    return max(k, 0)


# ---------------------------------------------------------------------------
# Complexification K(sqrt(-1))
# ---------------------------------------------------------------------------


class ComplexPuiseux:
    """``re + im*i`` with real and imaginary parts in the Puiseux field."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = PuiseuxNumber.coerce(re)
        self.im = PuiseuxNumber.coerce(im)

    @classmethod
    def coerce(cls, value) -> "ComplexPuiseux":
        if isinstance(value, ComplexPuiseux):
            return value
        if isinstance(value, (list, tuple)):
            re, im = value
            return cls(re, im)
        return cls(value, 0)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    @property
    def exact(self) -> bool:
        return self.re.exact and self.im.exact

    def conjugate(self) -> "ComplexPuiseux":
        return ComplexPuiseux(self.re, -self.im)

    def __neg__(self):
        return ComplexPuiseux(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexPuiseux(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexPuiseux(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (PuiseuxNumber, int, Fraction)):
            return ComplexPuiseux(self.re * other, self.im * other)
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        if other.im.is_zero():
            return ComplexPuiseux(self.re * other.re, self.im * other.re)
        if self.im.is_zero():
            return ComplexPuiseux(self.re * other.re, self.re * other.im)
        return ComplexPuiseux(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def norm_squared(self) -> PuiseuxNumber:
        return self.re * self.re + self.im * self.im

    def inv(self, prec=None) -> "ComplexPuiseux":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.im.is_zero():
            return ComplexPuiseux(self.re.inv(prec), 0)
        if self.re.is_zero():
            return ComplexPuiseux(0, -self.im.inv(prec))
        prec = DEFAULT_PRECISION if prec is None else as_rational(prec)
        # the parts of self scale the inverse norm; compensate so the result
        # is still known down to x^prec
        inv_norm = self.norm_squared().inv(prec - self.log_abs().exponent)
        return ComplexPuiseux(self.re * inv_norm, -(self.im * inv_norm))

    def __truediv__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inv()
        result = ComplexPuiseux(1, 0)
        for _ in range(abs(n)):
            result = result * base
        return result

    def log_abs(self, base_exponent=1) -> LogValue:
        """``|re + i im| = max(|re|, |im|)``; no cancellation can occur in
        ``re^2 + im^2`` since both leading coefficients are positive."""
        tops = [self.re.top(), self.im.top()]
        known = [e for e, ok in tops if ok and e is not None]
        unknown = [e for e, ok in tops if not ok]
        if not known:
            if unknown:
                raise PrecisionExhausted("complex value has no known leading term")
            return ZERO
        lead = max(known)
        if any(bound > lead for bound in unknown):
            raise PrecisionExhausted("an unknown part may dominate the known one")
        return LogValue(lead / as_rational(base_exponent))

    def truncate(self, below) -> "ComplexPuiseux":
        return ComplexPuiseux(self.re.truncate(below), self.im.truncate(below))

    def terms_above(self, bound) -> "ComplexPuiseux":
        return ComplexPuiseux(self.re.terms_above(bound), self.im.terms_above(bound))

    def specialize(self, t: float) -> complex:
        return complex(self.re.specialize(t).value, self.im.specialize(t).value)

    def __eq__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im.is_zero():
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if self.im.is_zero():
            return str(self.re)
        return f"({self.re}) + ({self.im})*i"

    def __repr__(self):
        return f"ComplexPuiseux({str(self.re)!r}, {str(self.im)!r})"


def _coerce_complex(value):
    if isinstance(value, ComplexPuiseux):
        return value
    if isinstance(value, (PuiseuxNumber, int, Fraction)):
        return ComplexPuiseux(value, 0)
    return NotImplemented


I = ComplexPuiseux(0, 1)


# ---------------------------------------------------------------------------
# Literal grammar
#
#   literal  := ws [sign] term (ws sign ws term)* ws
#   term     := number [ws '*' ws xpow] | xpow | 'O(' ws xpow ws ')'
#   number   := digits ['/' digits] | digits '.' [digits] | '.' digits
#   xpow     := 'x' [ws '^' ws exponent]
#   exponent := '(' ws [sign] digits [ws '/' ws digits] ws ')' | [sign] digits
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        offset = len(self.text[: self.pos].encode("utf-8"))
        raise LiteralSyntaxError(message, self.text, offset)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.peek().isspace():
            self.pos += 1

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def digits(self) -> str:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        return self.text[start : self.pos]

    def number(self) -> Fraction:
        start = self.pos
        whole = self.digits()
        if self.peek() == ".":
            self.pos += 1
            frac = self.digits()
            if not whole and not frac:
                self.error("malformed decimal")
            return Fraction(self.text[start : self.pos].rstrip(".") or "0")
        if not whole:
            self.error("expected a number")
        if self.peek() == "/":
            self.pos += 1
            den = self.digits()
            if not den:
                self.error("expected a denominator")
            if int(den) == 0:
                self.pos -= len(den)
                self.error("zero denominator")
            return Fraction(int(whole), int(den))
        return Fraction(int(whole))

    def exponent(self) -> Fraction:
        if self.peek() == "(":
            self.pos += 1
            self.skip_ws()
            sign = 1
            if self.peek() in "+-" and self.peek():
                sign = -1 if self.peek() == "-" else 1
                self.pos += 1
            num = self.digits()
            if not num:
                self.error("expected an integer exponent")
            self.skip_ws()
            den = "1"
            if self.peek() == "/":
                self.pos += 1
                self.skip_ws()
                den = self.digits()
                if not den:
                    self.error("expected an exponent denominator")
                if int(den) == 0:
                    self.error("zero denominator")
                self.skip_ws()
            self.expect(")")
            return sign * Fraction(int(num), int(den))
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        num = self.digits()
        if not num:
            self.error("expected an exponent")
        return sign * Fraction(int(num))

    def xpow(self) -> Fraction:
        self.expect("x")
        save = self.pos
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            return self.exponent()
        self.pos = save
        return Fraction(1)

    def parse(self) -> PuiseuxNumber:
        terms: list[tuple[Fraction, Fraction]] = []
        kb = None
        self.skip_ws()
        sign = 1
        if self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.skip_ws()
        while True:
            ch = self.peek()
            if ch == "O":
                self.pos += 1
                self.expect("(")
                self.skip_ws()
                bound = self.xpow()
                self.skip_ws()
                self.expect(")")
                kb = bound if kb is None else max(kb, bound)
            elif ch == "x":
                terms.append((self.xpow(), Fraction(sign)))
            elif ch.isdigit() or ch == ".":
                coeff = self.number()
                save = self.pos
                self.skip_ws()
                if self.peek() == "*":
                    self.pos += 1
                    self.skip_ws()
                    terms.append((self.xpow(), sign * coeff))
                else:
                    self.pos = save
                    terms.append((Fraction(0), sign * coeff))
            else:
                self.error("expected a term")
            self.skip_ws()
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error("expected '+' or '-'")
            sign = -1 if ch == "-" else 1
            self.pos += 1
            self.skip_ws()
        return PuiseuxNumber(terms, kb)


def parse_literal(text: str) -> PuiseuxNumber:
    """Parse a Puiseux literal such as ``"3*x^(3/2) - 2 + x^(-1)"``.

    Repeated exponents are summed; decimals are converted exactly.  An
    optional ``O(x^(p/q))`` term marks a truncated value.
    """
    return _Parser(text).parse()


def _format_exponent(e: Fraction) -> str:
    return "x" if e == 1 else f"x^({e})"


def format_literal(a: PuiseuxNumber) -> str:
    """Canonical text form; ``parse_literal(format_literal(a)) == a``."""
    pieces = []
    for e, c in a.terms:
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = _format_exponent(e)
        else:
            body = f"{mag}*{_format_exponent(e)}"
        pieces.append((c < 0, body))
    if a.known_below is not None:
        pieces.append((False, f"O({_format_exponent(a.known_below)})"))
    if not pieces:
        return "0"
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
