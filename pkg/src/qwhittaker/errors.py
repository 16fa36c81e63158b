"""Exception types shared across the package."""


class InexactDivisionError(ArithmeticError):
    """A division that was asserted to be exact left a nonzero remainder."""


class PoleError(ZeroDivisionError):
    """A rational expression was evaluated at a zero of its denominator.

    ``where`` carries whatever index data identifies the offending factor.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class SingularSystemError(ArithmeticError):
    """A linear system had no unique solution at the chosen specialization."""


class MissingEntryError(KeyError):
    """A table-valued operator needed an entry that the table does not contain."""

    def __init__(self, key):
        super().__init__(key)
        self.key = key


class BudgetExhaustedError(RuntimeError):
    """A truncated series computation needed more terms than its budget allows."""
