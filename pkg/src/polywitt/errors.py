"""Exception hierarchy shared by every module."""


class WittError(Exception):
    """Base class for all errors raised by polywitt."""


class RangeError(WittError, ValueError):
    """Parameters outside the supported desk-scale ranges (p, n, d)."""


class ParameterMismatch(WittError, ValueError):
    """Operands built over different primes, fields, levels or spaces."""


class CapExceeded(WittError):
    """The requested computation would enumerate too many words."""


class SchemaError(WittError, ValueError):
    """A serialized object does not match its schema."""


class NotInvariant(WittError, ValueError):
    """A vector handed to a Tate projection is not invariant."""


class DivisibilityError(WittError, ArithmeticError):
    """An exact division by a power of p failed.

    Every such division is guaranteed by a theorem; hitting this error means
    either a bug or a counterexample, so it is never caught internally.
    """
