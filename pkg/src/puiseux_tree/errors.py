"""Exception hierarchy shared by all modules."""


class PuiseuxTreeError(Exception):
    """Base class for every error raised by this package."""


class PrecisionExhausted(PuiseuxTreeError):
    """The known terms cancel and the truncation bound hides the leading term."""


class DivisionByZero(PuiseuxTreeError, ZeroDivisionError):
    pass


class NegativeInput(PuiseuxTreeError, ValueError):
    pass


class IrrationalCoefficient(PuiseuxTreeError, ValueError):
    """A square root would need a coefficient outside the rationals."""


class LiteralSyntaxError(PuiseuxTreeError, ValueError):
    """Malformed field literal; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, text, offset):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset}: {text!r}")


class LadderExhausted(PuiseuxTreeError):
    """A free-cut ladder is too short for the sign to have stabilized."""


class InfinityHasNoDiameter(PuiseuxTreeError, ValueError):
    pass


class DistanceInfinite(PuiseuxTreeError, ValueError):
    """The tree metric is infinite on type-1 points."""


class PointAtInfinity(PuiseuxTreeError, ValueError):
    """The operation needs an affine point but got the point at infinity."""


class OutOfRange(PuiseuxTreeError, ValueError):
    pass


class NonUnitDeterminant(PuiseuxTreeError, ValueError):
    pass


class NotPositiveDefinite(PuiseuxTreeError, ValueError):
    pass


class Overflow(PuiseuxTreeError, OverflowError):
    pass


class InputError(PuiseuxTreeError, ValueError):
    """Malformed job input.

    ``path`` locates the offending value inside the document (``$.payload.p``),
    ``line`` and ``column`` locate JSON syntax errors, and ``offset`` is the
    byte offset inside a field literal.
    """

    def __init__(self, message, path=None, line=None, column=None, offset=None):
        self.path = path
        self.line = line
        self.column = column
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line} column {column}")
        if path is not None:
            where.append(path)
        if offset is not None:
            where.append(f"offset {offset}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
