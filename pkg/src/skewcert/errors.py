"""Exception types raised by the kernel.

Each operation documents which of these it can raise; everything derives
from KernelError so callers can catch the whole family at once.
"""


class KernelError(Exception):
    pass


# scalar
class ZeroDenominator(KernelError):
    pass


class DivisionByZero(KernelError):
    pass


class PoleAtPoint(KernelError):
    pass


# skewpoly
class AutMismatch(KernelError):
    pass


class DivisorZero(KernelError):
    pass


class ZeroArgument(KernelError):
    pass


# skewfrac
class InvertZero(KernelError):
    pass


# pbw
class BracketIncompatible(KernelError):
    pass


class NotGraded(KernelError):
    pass


# series
class ContextMismatch(KernelError):
    pass


class LowestCoeffNotUnit(KernelError):
    """Raised when a series inverse does not exist; carries the offending
    lowest-order coefficient, which is the certification signal."""

    def __init__(self, message, coefficient=None):
        super().__init__(message)
        self.coefficient = coefficient


class HypothesisViolation(KernelError):
    pass


class CompatibilityFailure(KernelError):
    """Coefficient map does not intertwine the derivations; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrecisionExhausted(KernelError):
    pass


# symcert
class FactFailure(KernelError):
    pass


class UnknownAtomStar(KernelError):
    pass


# freecert
class AdapterFailure(KernelError):
    pass
