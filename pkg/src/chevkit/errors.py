"""Exception types shared across the package."""


class ChevkitError(Exception):
    """Base class for all package errors."""


class FieldError(ChevkitError, ValueError):
    """Invalid field description, or an operation not defined in this field."""


class FieldMismatchError(FieldError):
    """Operands live in different fields."""


class UndecidedError(ChevkitError):
    """The question cannot be settled by the supported decision procedure."""


class BudgetError(ChevkitError):
    """An enumeration or degree cap was exceeded."""


class RootError(ChevkitError, ValueError):
    """A vector is not a root of the system, or the system is unsupported."""


class GroupError(ChevkitError, ValueError):
    """Invalid group element input."""


class ParseError(ChevkitError, ValueError):
    """Syntax error in textual input, with the offending position."""

    def __init__(self, message, text=None, pos=None):
        self.text = text
        self.pos = pos
        if text is not None and pos is not None:
            message = "%s at position %d: %r" % (message, pos, text[pos:pos + 12])
        super().__init__(message)
