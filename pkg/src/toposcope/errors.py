"""Exception hierarchy shared across the package."""


class ToposcopeError(Exception):
    """Base class for all toposcope errors."""


class IngestError(ToposcopeError):
    """Raised for malformed or unusable input files."""


class ComputeError(ToposcopeError):
    """Raised when an analysis cannot be carried out on the given graph."""
