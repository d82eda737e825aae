"""Exception hierarchy shared by all abelint modules."""


class AbelintError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AbelintError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class ComputationError(AbelintError):
    """A numeric computation failed (CLI exit code 1)."""


class TrackingError(ComputationError):
    """Root tracking broke down (step collapse / root collision)."""


class ConsistencyError(ComputationError):
    """Two independent computations of the same quantity disagree."""


class CertificateError(ComputationError):
    """An emitted certificate failed its re-verification (internal bug guard)."""
