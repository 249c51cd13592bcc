from typing import Iterable, Optional


class HeckeqError(Exception):
    """Base class for every error raised by heckeq."""


class ZeroSeries(HeckeqError, ArithmeticError):
    """Raised when inverting a series with no known nonzero term."""


class OrderTooLarge(HeckeqError, ValueError):
    """Raised when a coefficient is requested beyond the guaranteed order."""


class NonPositiveExponent(HeckeqError, ValueError):
    """Raised when an infinite product would start at a non-positive exponent."""


class SingularSpec(HeckeqError, ValueError):
    """Raised when a theta denominator or Appell-Lerch pole vanishes identically."""


class InvalidIndex(HeckeqError, ValueError):
    """Raised for a string-function index that violates its constraints."""


class UnknownSuite(HeckeqError, ValueError):
    """Raised when an identity suite name is not registered."""


class UnknownIdentity(HeckeqError, ValueError):
    """Raised when a fault names an identity the suite does not contain."""


class ParseError(HeckeqError, ValueError):
    """Raised by the expression parser.

    Attributes:
        offset: Byte offset of the offending token in the source text
        expected: Sorted token descriptions that would have been accepted
    """

    def __init__(self, offset: int, expected: Iterable[str], found: str = ""):
        self.offset = offset
        self.expected = sorted(set(expected))
        self.found = found
        shown = found if found else "end of input"
        super().__init__(
            f"unexpected {shown!r} at offset {offset}; expected one of: "
            + ", ".join(self.expected)
        )


class EvalError(HeckeqError, ValueError):
    """Raised when evaluating an expression fails.

    Attributes:
        path: Rendered sub-expressions from the root down to the failing call
        cause: The underlying heckeq error
    """

    def __init__(self, path: Iterable[str], cause: Optional[Exception] = None):
        self.path = list(path)
        self.cause = cause
        where = " > ".join(self.path) if self.path else "<root>"
        super().__init__(f"in {where}: {type(cause).__name__}: {cause}")
