"""Exception types shared across the package."""


class OperadError(ValueError):
    """Base class for all errors raised by operadkit."""


class LengthMismatch(OperadError):
    pass


class ColorMismatch(OperadError):
    pass


class PositionOutOfRange(OperadError):
    pass


class ArityMismatch(OperadError):
    pass


class ModeError(OperadError):
    pass


class BoundaryMismatch(OperadError):
    pass


class SignatureMismatch(OperadError):
    pass


class DimensionMismatch(OperadError):
    pass


class IllTypedWord(OperadError):
    pass


class FrobeniusAxiomFailure(OperadError):
    pass


class RequiresPairing(OperadError):
    pass


class ArityOutOfRange(OperadError):
    pass


class ParseError(OperadError):
    """Syntax error in an expression, with 1-based line/column of the offending token."""

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class SchemaError(OperadError):
    """An input document violates its schema; ``field`` names the offending path."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
