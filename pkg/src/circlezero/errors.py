"""Exception types shared across the package."""


class CircleZeroError(Exception):
    """Base class for package errors."""


class DomainError(CircleZeroError, ValueError):
    """Input outside an operation's documented domain."""


class CapacityError(CircleZeroError):
    """Request beyond a table's configured cap."""


class PrecisionError(CircleZeroError):
    """A comparison stayed indeterminate after all precision retries."""


class NumericError(CircleZeroError):
    """An iterative numeric procedure failed to converge; carries diagnostics."""

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics
