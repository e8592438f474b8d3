"""Fixed-boundary infinite well.

Key Components:
- Models: WellConfig, SuperpositionSpec, EvalPoint, UnitMode
- Eigenstates: eigenfunction(), angular_frequency(), bohr_frequency(),
  fixed_density() and the mixture / bracket helpers
- Constants: CODATA table used by physical mode
"""

from .constants import AMU, ANGSTROM, ELECTRON_MASS, HBAR, SIGMA_CAP
from .eigenstates import (
    angular_frequency,
    bohr_frequency,
    density_at_widths,
    density_normalization,
    eigenfunction,
    fixed_density,
    fixed_interference,
    interference_bracket,
    mixture_density,
    oscillation_bounds,
    spatial_amplitude,
    spatial_modulus,
)
from .models import EvalPoint, SuperpositionSpec, UnitMode, WellConfig

__all__ = [
    # Models
    "EvalPoint",
    "SuperpositionSpec",
    "UnitMode",
    "WellConfig",
    # Eigenstates
    "angular_frequency",
    "bohr_frequency",
    "density_at_widths",
    "density_normalization",
    "eigenfunction",
    "fixed_density",
    "fixed_interference",
    "interference_bracket",
    "mixture_density",
    "oscillation_bounds",
    "spatial_amplitude",
    "spatial_modulus",
    # Constants
    "AMU",
    "ANGSTROM",
    "ELECTRON_MASS",
    "HBAR",
    "SIGMA_CAP",
]
