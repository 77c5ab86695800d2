"""Exceptions shared across the package."""


class WorkCapExceeded(RuntimeError):
    """Raised when a search would exceed its work budget.

    The exception is raised before the expensive part starts whenever the
    cost can be bounded upfront, so catching it is cheap.
    """

    def __init__(self, message, required=None, spent=0):
        super().__init__(message)
        self.required = required
        self.spent = spent


class VerificationError(RuntimeError):
    """A cross-check of a result that is supposed to hold by theorem failed."""
