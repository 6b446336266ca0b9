"""Exception hierarchy shared by every module of the package."""


class ASWNError(Exception):
    """Base class for all errors raised by :mod:`aswn`."""


class NotPrime(ASWNError, ValueError):
    pass


class LevelMismatch(ASWNError, ValueError):
    pass


class NotInSubfield(ASWNError, ArithmeticError):
    pass


class ZeroArgument(ASWNError, ValueError):
    pass


class ParamMismatch(ASWNError, ValueError):
    pass


class PrecisionExhausted(ASWNError, ArithmeticError):
    """Raised when a result cannot be certified at the working precision.

    Callers are expected to raise the precision and retry.
    """


class IntegralityViolation(ASWNError, ArithmeticError):
    pass


class EnumerationTooLarge(ASWNError, RuntimeError):
    pass


class BudgetExceeded(EnumerationTooLarge):
    pass


class EmptyInput(ASWNError, ValueError):
    pass


class OutOfDomain(ASWNError, ValueError):
    pass


class LengthMismatch(ASWNError, ValueError):
    pass


class SlopeOutOfRange(ASWNError, ValueError):
    pass


class TruncationTooSmall(ASWNError, ValueError):
    pass


class NegativeValuation(ASWNError, ArithmeticError):
    pass


class MultiplicityNotDivisible(ASWNError, ArithmeticError):
    pass


class InvalidConfig(ASWNError, ValueError):
    pass
