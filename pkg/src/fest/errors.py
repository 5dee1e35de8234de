"""Exception taxonomy shared by the real implementation and the oracle."""


class FestError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(FestError):
    """An index or length falls outside the valid range."""


class HandleError(FestError):
    """A string handle is stale (destroyed) or belongs to another forest."""


class UsageError(FestError):
    """The operation does not apply to this handle or configuration."""


class DomainError(FestError):
    """A symbol code is outside the accepted domain."""
