"""Exception types shared by every pairkit module."""


class PairkitError(Exception):
    """Base class for all library errors."""


class ParseError(PairkitError):
    """Syntax or structural error in a problem file, with 1-based position."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + where)


class ValidationError(PairkitError):
    """Semantic precondition violated (arity, missing section, bad input)."""


class AlgebraError(PairkitError):
    """Arithmetic-level failure: zero denominator, ring or order mismatch."""


class UnsupportedMethodError(PairkitError):
    """A method that is unsound for the given field was requested."""


class InternalCheckError(PairkitError):
    """Two routes that must agree disagreed; indicates a bug, not bad input."""
