"""Exception hierarchy.

Every error raised by the package derives from :class:`NoetherFormsError`
and, where a builtin exception has the same meaning, from that builtin too,
so callers can catch either.
"""


class NoetherFormsError(Exception):
    """Base class for all package errors."""


class DivisionByZero(NoetherFormsError, ZeroDivisionError):
    pass


class BadIndex(NoetherFormsError, IndexError):
    pass


class DimensionMismatch(NoetherFormsError, ValueError):
    pass


class SingularCoframe(NoetherFormsError, ValueError):
    pass


class BadShape(NoetherFormsError, ValueError):
    pass


class ParseError(NoetherFormsError, ValueError):
    """Syntax error in DSL or textual Scalar/form input."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownField(NoetherFormsError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown field"


class TypeCheckError(NoetherFormsError, TypeError):
    """Degree/parity/index-scoping violation in a Lagrangian expression."""


class ConfigError(NoetherFormsError, ValueError):
    pass


class UnsupportedNode(NoetherFormsError, NotImplementedError):
    pass


class BadDegree(NoetherFormsError, ValueError):
    pass


class BadTensor(NoetherFormsError, ValueError):
    pass


class NotOrthochronous(NoetherFormsError, ValueError):
    """Raised when a frame transformation fails to preserve the signature."""


class UnknownModel(NoetherFormsError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown model"


class BadFormat(NoetherFormsError, ValueError):
    pass
