"""Exception types shared across the package."""


class EvoalgError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EvoalgError):
    """A value is outside the domain an operation supports."""


class MixedFields(EvoalgError):
    """Operands belong to different coefficient fields."""


class DivisionByZero(EvoalgError):
    pass


class ShapeError(EvoalgError):
    """Matrix or vector dimensions do not match."""


class AmbientMismatch(EvoalgError):
    """Subspaces live in coordinate spaces of different dimensions."""


class NotAnIdeal(EvoalgError):
    pass


class NotNilpotent(EvoalgError):
    pass


class SpecMismatch(EvoalgError):
    """A family spec does not carry the data its kind requires."""


class KindMismatch(EvoalgError):
    pass


class UnsupportedField(EvoalgError):
    pass


class UnsupportedDim(EvoalgError):
    pass


class FieldLacksI(EvoalgError):
    """The field has no square root of -1 but one is required."""


class SqrtUnavailable(EvoalgError):
    """A normalization step needs a square root absent from the field."""


class BudgetExceeded(EvoalgError):
    pass


class Singular(EvoalgError):
    pass


class AlgebraSyntaxError(EvoalgError):
    """Malformed literal or algebra file; carries line/column context."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}: {message}" if column is None else \
                f"line {line}, col {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
