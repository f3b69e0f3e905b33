"""Exception hierarchy shared across the package."""


class QbmSbsError(Exception):
    """Base class for all package errors."""


class DomainError(QbmSbsError, ValueError):
    """An input violates a physical or mathematical precondition."""


class ConfigurationError(QbmSbsError, ValueError):
    """A configuration is internally inconsistent or out of the supported range."""


class ResonanceError(DomainError):
    """A bath frequency is too close to the central oscillator frequency."""


class TruncationError(QbmSbsError, ValueError):
    """A Fock-space truncation is too small for the requested accuracy."""
