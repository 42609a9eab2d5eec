"""Exception hierarchy shared across the package.

Exit-code mapping for the CLI lives in kerrpulse.cli.
"""


class KerrPulseError(Exception):
    """Base class for all kerrpulse errors."""


class InvalidDimensionError(KerrPulseError):
    """Fock-space dimension too small for the requested operation."""


class ContractViolationError(KerrPulseError):
    """A numerical pre/post-condition was violated (e.g. non-Hermitian H)."""


class InvalidStateError(KerrPulseError):
    """State vector is unusable (zero norm, wrong shape)."""


class NormalizationError(KerrPulseError):
    """Target coefficients are not normalized within tolerance."""


class InternalConsistencyError(KerrPulseError):
    """The compiler reached a state that normalized input cannot produce."""


class IntegrationResolutionError(KerrPulseError):
    """Fixed-step master-equation integration lost accuracy; increase steps_per_pulse."""


class JobSpecError(KerrPulseError):
    """Job specification document is malformed."""
