"""Envelope extraction and Gamma fitting.

At the times where cos(w_bar t - phase) = +-1 the averaged interference
term equals its own envelope, so sampling |<cross term>| there and fitting
ln|m| against t^2 recovers the decay rate Gamma of exp(-Gamma t^2).

Beyond first order in eps the exact cross term picks up a phase lag of
about 12 (w_bar t)^3 sigma^4, so the samples read envelope * |cos(lag)|.
Keep k_max pi below ~1.5 / sigma (envelope down to ~e^-4.5) for fits
within a few percent; extract_envelope() logs a warning past that.
"""
import logging
from dataclasses import dataclass
from math import exp, pi
from typing import Any, Dict, List, Sequence

import numpy as np

from core.ensemble import NoiseModel, QuadratureSpec, averaged_interference
from core.errors import DomainError, InsufficientDataError
from core.well import (
    EvalPoint,
    SuperpositionSpec,
    WellConfig,
    bohr_frequency,
    interference_bracket,
)

logger = logging.getLogger(__name__)

# |bracket(x)| at or below this means x is an interference node
NODE_TOLERANCE = 1e-6
# Magnitudes at or below this carry no usable log
MAGNITUDE_FLOOR = 1e-12
MIN_FIT_SAMPLES = 4
MIN_K_MAX = 4
# k_max pi sigma above this lets the phase lag bias the fit
PHASE_LAG_LIMIT = 1.5


@dataclass(frozen=True)
class EnvelopeSample:
    """|interference| at the k-th extremum of the cross term's cosine."""

    t: float
    magnitude: float
    k: int

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"k": self.k, "t": self.t, "magnitude": self.magnitude}


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit of ln m = ln A - Gamma t^2."""

    gamma_fit: float
    amplitude_fit: float
    residual_rms: float
    samples_used: int

    def predicted(self, t: float) -> float:
        """Fitted envelope A exp(-Gamma t^2)."""
        return self.amplitude_fit * exp(-self.gamma_fit * t * t)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "gamma_fit": self.gamma_fit,
            "amplitude_fit": self.amplitude_fit,
            "residual_rms": self.residual_rms,
            "samples_used": self.samples_used,
        }


def extremum_times(spec: SuperpositionSpec, k_max: int, cfg: WellConfig) -> List[float]:
    """t_k = (k pi + phase) / w_bar for k = 0..k_max, phase reduced to [0, pi)."""
    omega_bar = float(bohr_frequency(spec, cfg.a_bar, cfg))
    offset = spec.relative_phase % pi
    return [(k * pi + offset) / omega_bar for k in range(k_max + 1)]


def extract_envelope(
    spec: SuperpositionSpec,
    x: float,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
    k_max: int,
) -> List[EnvelopeSample]:
    """
    Sample the interference envelope at the cosine's extrema.

    Args:
        spec: Superposition (must not be stationary)
        x: Lab-frame position
        noise: Width-noise model
        quad: Quadrature settings
        cfg: Unit system
        k_max: Last extremum index (>= 4)

    Returns:
        k_max + 1 samples in increasing time

    Raises:
        DomainError: k_max too small, stationary state, or x at a node
    """
    if k_max < MIN_K_MAX:
        raise DomainError(f"k_max must be >= {MIN_K_MAX}, got {k_max}")
    if spec.is_stationary:
        raise DomainError("a stationary state has no interference envelope")
    bracket = float(interference_bracket(spec, x, cfg))
    if abs(bracket) <= NODE_TOLERANCE:
        raise DomainError(
            f"x={x:g} is an interference node (|bracket| = {abs(bracket):.3g})"
        )
    reach = k_max * pi * noise.sigma
    if reach > PHASE_LAG_LIMIT:
        logger.warning(
            "k_max=%d reaches k_max pi sigma = %.2f (limit %.1f); late samples carry a "
            "phase lag and the fitted Gamma may be biased",
            k_max,
            reach,
            PHASE_LAG_LIMIT,
        )

    samples = []
    for k, t in enumerate(extremum_times(spec, k_max, cfg)):
        value = averaged_interference(spec, EvalPoint(x, t), noise, quad, cfg)
        samples.append(EnvelopeSample(t=t, magnitude=abs(value), k=k))
    logger.debug("extracted %d envelope samples at x=%g", len(samples), x)
    return samples


def fit_gamma(samples: Sequence[EnvelopeSample]) -> FitResult:
    """
    Fit Gamma and A to the envelope samples.

    Samples with magnitude <= MAGNITUDE_FLOOR are dropped before fitting.

    Raises:
        InsufficientDataError: fewer than MIN_FIT_SAMPLES usable samples
    """
    usable = [s for s in samples if s.magnitude > MAGNITUDE_FLOOR]
    if len(usable) < MIN_FIT_SAMPLES:
        raise InsufficientDataError(len(usable), MIN_FIT_SAMPLES)
    if len(usable) < len(samples):
        logger.info("dropped %d vanishing envelope samples", len(samples) - len(usable))

    t_squared = np.array([s.t * s.t for s in usable])
    log_magnitude = np.log([s.magnitude for s in usable])
    slope, intercept = np.polyfit(t_squared, log_magnitude, 1)
    residuals = log_magnitude - (slope * t_squared + intercept)
    return FitResult(
        gamma_fit=float(-slope),
        amplitude_fit=float(np.exp(intercept)),
        residual_rms=float(np.sqrt(np.mean(np.square(residuals)))),
        samples_used=len(usable),
    )
