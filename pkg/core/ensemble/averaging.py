"""Exact ensemble averages by quadrature over the width fluctuation.

Each realization is a well of width a = a_bar (1 + eps). The averaged
eigenstate density and the averaged interference term are expectations
of fixed-width expressions; integrands vanish wherever the lab-frame
point lies outside the realization's well or 1 + eps <= 0.

The interference term is assembled from the A_q^+- integrals

    A_q^+- = integral 1/(1+eps) exp[i q pi x / (a_bar (1+eps))
                                    +- i w_bar t / (1+eps)^2 - theta eps^2] d eps

with q in {+-(n_hi - n_lo), +-(n_hi + n_lo)}.
"""
import logging
from dataclasses import dataclass
from math import pi, sqrt
from typing import Dict, Optional, Tuple

import numpy as np

from core.errors import DomainError, NumericalConsistencyError
from core.well import EvalPoint, SuperpositionSpec, WellConfig, bohr_frequency
from core.well.eigenstates import spatial_amplitude

from .noise import NoiseModel, QuadratureSpec
from .quadrature import QuadratureResult, expectation

logger = logging.getLogger(__name__)

# Largest imaginary residue tolerated in the A_q combination
IMAGINARY_RESIDUE_LIMIT = 1e-9


@dataclass(frozen=True)
class EnsembleDensity:
    """Averaged density with its components and convergence state."""

    density: float
    eigen_lo: float
    eigen_hi: float
    interference: float  # unweighted <psi_lo psi_hi cos(wt - phase)>
    converged: bool

    def to_dict(self) -> Dict[str, object]:
        """Convert to dictionary."""
        return {
            "density": self.density,
            "eigen_lo": self.eigen_lo,
            "eigen_hi": self.eigen_hi,
            "interference": self.interference,
            "converged": self.converged,
        }


def _support_min(x: float, cfg: WellConfig) -> float:
    """eps below which x lies outside the realization's well."""
    return max(x / cfg.a_bar - 1.0, -1.0)


def _eigen_result(
    n: int,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
    strict: bool,
) -> QuadratureResult:
    if n < 1:
        raise DomainError(f"eigenstate index must be >= 1, got {n}")

    def integrand(eps: np.ndarray) -> np.ndarray:
        return np.square(spatial_amplitude(n, point.x, cfg.a_bar * (1.0 + eps)))

    return expectation(
        integrand,
        noise,
        quad,
        support_min=_support_min(point.x, cfg),
        strict=strict,
        context=f"<|psi_{n}|^2> at x={point.x:g}",
    )


def averaged_eigen_density(
    n: int,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
) -> float:
    """
    Width-averaged density of the stationary state psi_n.

    Args:
        n: Eigenstate index
        point: Lab-frame evaluation point (t is irrelevant)
        noise: Width-noise model
        quad: Quadrature settings
        cfg: Unit system

    Returns:
        <|psi_n(x)|^2> over the ensemble of widths
    """
    return _eigen_result(n, point, noise, quad, cfg, strict=True).real


def _normalized_a_q(
    q: int,
    sign: int,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
    omega_bar: float,
    strict: bool,
) -> QuadratureResult:
    """sqrt(theta/pi) A_q^sign, i.e. the Gaussian expectation of the A integrand."""
    if q == 0:
        raise DomainError("A_q is undefined for q = 0")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    x = point.x
    spatial = q * pi * x / cfg.a_bar
    temporal = sign * omega_bar * point.t

    def integrand(eps: np.ndarray) -> np.ndarray:
        stretch = 1.0 + eps
        inside = (stretch > 0.0) & (x <= cfg.a_bar * stretch)
        safe = np.where(inside, stretch, 1.0)
        value = np.exp(1j * (spatial / safe + temporal / np.square(safe))) / safe
        return np.where(inside, value, 0.0)

    return expectation(
        integrand,
        noise,
        quad,
        support_min=_support_min(x, cfg),
        strict=strict,
        context=f"A_{q}^{'+' if sign > 0 else '-'} at x={x:g}, t={point.t:g}",
    )


def a_q_exact(
    q: int,
    sign: int,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
    spec: Optional[SuperpositionSpec] = None,
) -> complex:
    """
    The exact A_q^sign integral by quadrature.

    Args:
        q: Nonzero signed integer wavenumber multiple
        sign: +1 or -1, sign of the temporal phase
        point: Lab-frame evaluation point
        noise: Width-noise model (sigma > 0)
        quad: Quadrature settings
        cfg: Unit system
        spec: Superposition fixing w_bar (default pair when omitted)

    Returns:
        Complex value of A_q^sign
    """
    if noise.is_fixed:
        raise DomainError("A_q needs a fluctuating width (sigma > 0)")
    spec = spec or SuperpositionSpec()
    omega_bar = float(bohr_frequency(spec, cfg.a_bar, cfg))
    result = _normalized_a_q(q, sign, point, noise, quad, cfg, omega_bar, strict=True)
    return complex(result.value) * sqrt(pi / noise.theta)


def _interference_result(
    spec: SuperpositionSpec,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
    strict: bool,
) -> Tuple[float, bool]:
    omega_bar = float(bohr_frequency(spec, cfg.a_bar, cfg))
    phase = spec.relative_phase
    total = 0j
    converged = True
    for q_abs, parity in ((spec.q_difference, 1.0), (spec.q_sum, -1.0)):
        for q in (q_abs, -q_abs):
            for sign in (1, -1):
                term = _normalized_a_q(q, sign, point, noise, quad, cfg, omega_bar, strict)
                converged = converged and term.converged
                total += parity * np.exp(-1j * sign * phase) * complex(term.value)
    total /= 4.0 * cfg.a_bar

    residue = abs(total.imag)
    if residue > IMAGINARY_RESIDUE_LIMIT:
        raise NumericalConsistencyError(
            residue, IMAGINARY_RESIDUE_LIMIT, f"interference at x={point.x:g}, t={point.t:g}"
        )
    return float(total.real), converged


def averaged_interference(
    spec: SuperpositionSpec,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
) -> float:
    """
    Width-averaged signed cross term <psi_lo psi_hi cos(w t - phase)>.

    For the default pair this is the <|psi_1||psi_2| cos wt> term of the
    averaged density, combined from eight A_q^+- integrals.

    Raises:
        ConvergenceError: an A_q integral did not converge
        NumericalConsistencyError: imaginary parts failed to cancel
    """
    value, _ = _interference_result(spec, point, noise, quad, cfg, strict=True)
    return value


def evaluate_averaged_density(
    spec: SuperpositionSpec,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
    strict: bool = True,
) -> EnsembleDensity:
    """
    Averaged density with its eigen and interference components.

    With strict=False unconverged quadratures are kept and flagged instead
    of raising.
    """
    lo = _eigen_result(spec.n_lo, point, noise, quad, cfg, strict)
    hi = _eigen_result(spec.n_hi, point, noise, quad, cfg, strict)
    converged = lo.converged and hi.converged
    interference = 0.0
    if not spec.is_stationary:
        interference, cross_converged = _interference_result(
            spec, point, noise, quad, cfg, strict
        )
        converged = converged and cross_converged
    density = (
        spec.weight_lo * lo.real
        + spec.weight_hi * hi.real
        + spec.interference_weight * interference
    )
    return EnsembleDensity(density, lo.real, hi.real, interference, converged)


def averaged_density(
    spec: SuperpositionSpec,
    point: EvalPoint,
    noise: NoiseModel,
    quad: QuadratureSpec,
    cfg: WellConfig,
) -> float:
    """
    Width-averaged probability density of the superposition.

    |c_lo|^2 <|psi_lo|^2> + |c_hi|^2 <|psi_hi|^2> + 2|c_lo||c_hi| <cross term>
    """
    return evaluate_averaged_density(spec, point, noise, quad, cfg).density
