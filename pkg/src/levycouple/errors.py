"""Exception types shared across the package."""


class LevyCoupleError(Exception):
    """Base class for all package errors."""


class ConfigError(LevyCoupleError):
    """Invalid or malformed configuration (bad JSON, unknown keys, bad ranges)."""


class UnsupportedRegimeError(LevyCoupleError):
    """Parameter combination outside every supported case (e.g. alpha = 1)."""


class InfiniteMomentError(LevyCoupleError):
    """A required moment integral diverges."""


class InvariantViolationError(LevyCoupleError):
    """A structural invariant failed (non-monotone tail, bad spherical measure...)."""


class AssumptionViolationError(LevyCoupleError):
    """A coupling's structural assumption fails (density above 1, atom mismatch)."""


class ResourceLimitError(LevyCoupleError):
    """Expected simulation workload exceeds the configured cap."""


class InsufficientDataError(LevyCoupleError):
    """Not enough usable data points for a fit."""


class DegenerateFamilyError(LevyCoupleError):
    """Operation undefined for this family (e.g. leading term is zero)."""


class NumericalFailureError(LevyCoupleError):
    """Quadrature or root finding failed to reach the requested tolerance."""

    def __init__(self, message, achieved_tol=None):
        super().__init__(message)
        self.achieved_tol = achieved_tol
