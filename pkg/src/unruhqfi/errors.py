"""Exception types raised by the library."""


class UnruhQfiError(Exception):
    """Base class for all library errors."""


class DomainError(UnruhQfiError, ValueError):
    """Input lies outside the physical domain (non-PSD state, r outside [0, pi/4], ...)."""


class NotEstimable(UnruhQfiError):
    """The state derivative has weight entirely inside the kernel of rho."""


class DegeneracyError(UnruhQfiError):
    """Eigenvector derivatives are undefined: degenerate eigenvalues coupled by drho."""


class SingularDenominator(UnruhQfiError, ZeroDivisionError):
    """A closed-form expression hit a vanishing denominator."""


class FallbackRegion(UnruhQfiError):
    """A closed-form expression is evaluated inside its removable-singularity region."""


class ConfigError(UnruhQfiError, ValueError):
    """A sweep configuration is malformed."""
