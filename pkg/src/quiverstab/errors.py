"""Exception types shared across the package.

The CLI maps each of these onto a distinct exit code.
"""


class ShapeError(ValueError):
    """Matrix/quiver shapes or character arities are inconsistent."""


class PreconditionError(ValueError):
    """An operation was called outside the domain where it is defined."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class UnavailableError(RuntimeError):
    """The requested computation has no construction available (e.g. m != 1 presentations)."""
