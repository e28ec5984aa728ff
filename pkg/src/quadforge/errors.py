"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured element budget.

    Signals that formula-only mode is required at this scale.
    """


class PslMembershipError(ValueError):
    """Raised when a matrix with non-square determinant is canonicalized as
    a PSL element: the element lies in PGL \\ PSL."""


class MixedFieldError(ValueError):
    """Raised when two operands belong to different fields or groups."""
