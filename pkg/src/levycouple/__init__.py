"""levycouple: coupled simulation of Levy processes attracted to stable laws,
analytic Wasserstein bound evaluators, and rate-verification experiments."""

from .errors import (
    AssumptionViolationError,
    ConfigError,
    DegenerateFamilyError,
    InfiniteMomentError,
    InsufficientDataError,
    InvariantViolationError,
    LevyCoupleError,
    NumericalFailureError,
    ResourceLimitError,
    UnsupportedRegimeError,
)
from .families import (
    AugmentedLogProfile,
    CompoundPerturbation,
    LevyFamily,
    SphericalMeasure,
    StableProfile,
    StableSpec,
    TemperedProfile,
    TruncatedProfile,
    bg_index,
    char_exponent,
    doa_tail_limit,
    htilde_eval,
    radial_inverse_tail,
    stable_inverse_tail,
)
from .moments import sup_moment_bound
from .slowvar import SlowVarSpec, iterated_log_bound_check, slowvar_eval

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
