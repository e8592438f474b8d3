"""Small-sigma closed forms, decoherence timescales and unit estimates.

Key Components:
- Approximations: approx_eigen_density(), a_q_approx(), a_q_late(),
  approx_interference(), approx_density(), assess_regime()
- Timescales: DecayParameters, decay_parameters(), suppression_time(),
  boundary_width_estimate()
"""

from .approximations import (
    EigenDensityForm,
    InterferenceForm,
    RegimeInfo,
    a_q_approx,
    a_q_late,
    approx_density,
    approx_eigen_density,
    approx_interference,
    approx_mixture,
    assess_regime,
)
from .timescales import (
    DecayParameters,
    boundary_width_estimate,
    decay_parameters,
    sigma_from_boundary_width,
    suppression_time,
    time_from_phase,
)

__all__ = [
    # Approximations
    "EigenDensityForm",
    "InterferenceForm",
    "RegimeInfo",
    "a_q_approx",
    "a_q_late",
    "approx_density",
    "approx_eigen_density",
    "approx_interference",
    "approx_mixture",
    "assess_regime",
    # Timescales
    "DecayParameters",
    "boundary_width_estimate",
    "decay_parameters",
    "sigma_from_boundary_width",
    "suppression_time",
    "time_from_phase",
]
