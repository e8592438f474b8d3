"""Ensemble averaging over Gaussian width fluctuations.

Key Components:
- Noise: NoiseModel, QuadratureSpec, MonteCarloSpec, noise_pdf()
- Quadrature: expectation() with node doubling, QuadratureResult
- Averaging: averaged_eigen_density(), a_q_exact(), averaged_interference(),
  averaged_density()
- Monte Carlo: mc_averaged_density(), the independent oracle
"""

from .averaging import (
    EnsembleDensity,
    a_q_exact,
    averaged_density,
    averaged_eigen_density,
    averaged_interference,
    evaluate_averaged_density,
)
from .montecarlo import MonteCarloResult, mc_averaged_density
from .noise import MonteCarloSpec, NoiseModel, QuadratureSpec, noise_pdf
from .quadrature import QuadratureResult, QuadratureRule, expectation

__all__ = [
    # Noise
    "MonteCarloSpec",
    "NoiseModel",
    "QuadratureSpec",
    "noise_pdf",
    # Quadrature
    "QuadratureResult",
    "QuadratureRule",
    "expectation",
    # Averaging
    "EnsembleDensity",
    "a_q_exact",
    "averaged_density",
    "averaged_eigen_density",
    "averaged_interference",
    "evaluate_averaged_density",
    # Monte Carlo
    "MonteCarloResult",
    "mc_averaged_density",
]
