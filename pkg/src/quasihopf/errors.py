"""Exception types shared across the package."""


class QuasiHopfError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(QuasiHopfError, ZeroDivisionError):
    pass


class FieldMismatch(QuasiHopfError, TypeError):
    """Scalars or tensors from different cyclotomic fields were combined."""


class RankMismatch(QuasiHopfError, ValueError):
    pass


class NotInvertible(QuasiHopfError, ArithmeticError):
    pass


class InternalIdentityFailure(QuasiHopfError):
    """An identity that must hold for any valid input failed; the input algebra is malformed.

    ``report`` carries the failing checks when available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAnRMatrix(InternalIdentityFailure):
    pass


class NoSolution(QuasiHopfError):
    def __init__(self, message, space_dimension):
        super().__init__(message)
        self.space_dimension = space_dimension


class NotSemisimple(QuasiHopfError):
    pass


class ConstructionFailure(InternalIdentityFailure):
    pass


class BadParameters(QuasiHopfError, ValueError):
    pass


class FormatError(QuasiHopfError, ValueError):
    """Malformed algebra file."""
