"""Exception types raised by the library."""


class RegringError(Exception):
    """Base class for every error raised by this package."""


class ParseError(RegringError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        super().__init__(where + message)


class ShapeError(RegringError, ValueError):
    """Operands have incompatible dimensions."""


class NotSquareError(ShapeError):
    pass


class SingularMatrixError(RegringError, ArithmeticError):
    pass


class NotHermitianError(RegringError, ValueError):
    pass


class NotPSDError(RegringError, ValueError):
    pass


class NotIdempotentError(RegringError, ValueError):
    pass


class InvalidInverseError(RegringError, ValueError):
    """A matrix handed in as a generalized inverse fails its defining identity."""


class PreconditionError(RegringError, ValueError):
    """A named precondition of an operation does not hold."""

    def __init__(self, condition, message=None):
        self.condition = condition
        super().__init__(message or condition)


class NoSolutionError(RegringError, ValueError):
    pass


class DegenerateFrameError(PreconditionError):
    """The matrix already lies in the corner picked out by the frame."""


class ConsistencyError(RegringError, AssertionError):
    """Two routes that must agree produced different answers."""


class RingSpecError(RegringError, ValueError):
    pass


class NotRegularError(RingSpecError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class SearchBoundError(RegringError, ValueError):
    pass
