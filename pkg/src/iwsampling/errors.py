"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation.

    Raised instead of silently clamping: a clamped probability or ratio
    would quietly corrupt a design search.
    """


class DataError(ValueError):
    """A data file is unreadable, empty, or contains invalid entries."""


class FitError(RuntimeError):
    """A maximum-likelihood fit failed to converge."""
