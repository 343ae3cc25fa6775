"""Exception hierarchy shared by all blockshift modules."""


class BlockShiftError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(BlockShiftError, ValueError):
    """Operand shapes are incompatible."""


class ValidationError(BlockShiftError, ValueError):
    """Input data violates a structural invariant (shape, finiteness, sign)."""


class HermitianViolationError(BlockShiftError, ValueError):
    """A matrix handed to the Hermitian eigensolver is not Hermitian."""


class ConvergenceError(BlockShiftError, ArithmeticError):
    """An iterative method hit its iteration cap.

    ``residual`` carries the last measured off-diagonal mass.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class NoChainError(BlockShiftError, ValueError):
    """The operation needs at least one block (k >= 2)."""


class OrderingViolationError(BlockShiftError, ArithmeticError):
    """w(A'') <= w(A) <= w(A') failed numerically. Always a bug."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = dict(values or {})


class ParseError(BlockShiftError, ValueError):
    """A block shift document is not valid JSON."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column
