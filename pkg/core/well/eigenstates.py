"""Fixed-boundary quantum mechanics of the infinite well.

Eigenfunctions, eigenfrequencies and the two-state superposition density
for a well occupying [0, width]. Densities outside the well are exactly 0,
which keeps ensemble averages over varying widths well-posed at a fixed
lab-frame position.

The array-valued helpers (spatial_amplitude, density_at_widths) accept
numpy arrays for x or width and are what the ensemble paths vectorize over.
"""
import logging
from math import pi
from typing import Tuple, Union

import numpy as np
from scipy import integrate

from core.errors import DomainError

from .models import EvalPoint, SuperpositionSpec, WellConfig

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _check_width(width: ArrayLike) -> None:
    if np.any(np.asarray(width) <= 0):
        raise DomainError(f"well width must be > 0, got {width}")


def _check_index(n: int) -> None:
    if n < 1:
        raise DomainError(f"eigenstate index must be >= 1, got {n}")


def angular_frequency(n: int, width: ArrayLike, cfg: WellConfig) -> ArrayLike:
    """
    Eigenfrequency omega_n = n^2 pi^2 hbar / (2 m width^2).

    Args:
        n: Eigenstate index (>= 1)
        width: Well width (scalar or array)
        cfg: Unit system

    Returns:
        Angular frequency in the units of cfg
    """
    _check_index(n)
    _check_width(width)
    return n * n * pi * pi * cfg.hbar / (2.0 * cfg.mass * np.square(width))


def bohr_frequency(spec: SuperpositionSpec, width: ArrayLike, cfg: WellConfig) -> ArrayLike:
    """Bohr frequency omega_{n_hi} - omega_{n_lo} at the given width."""
    _check_width(width)
    return (
        (spec.n_hi**2 - spec.n_lo**2)
        * pi
        * pi
        * cfg.hbar
        / (2.0 * cfg.mass * np.square(width))
    )


def spatial_amplitude(n: int, x: ArrayLike, width: ArrayLike) -> ArrayLike:
    """
    Real spatial part sqrt(2/width) sin(n pi x / width), zero outside [0, width].

    No width validation: callers that pass realization widths must have
    screened out non-positive ones.
    """
    x = np.asarray(x, dtype=float)
    width = np.asarray(width, dtype=float)
    inside = (width > 0.0) & (x >= 0.0) & (x <= width)
    safe = np.where(inside, width, 1.0)
    value = np.sqrt(2.0 / safe) * np.sin(n * pi * x / safe)
    result = np.where(inside, value, 0.0)
    return result if result.ndim else float(result)


def spatial_modulus(n: int, x: ArrayLike, width: ArrayLike) -> ArrayLike:
    """|psi_n(x)|, the time-independent modulus of the eigenfunction."""
    _check_index(n)
    _check_width(width)
    return np.abs(spatial_amplitude(n, x, width))


def eigenfunction(n: int, point: EvalPoint, width: float, cfg: WellConfig) -> complex:
    """
    psi_n(x, t) = sqrt(2/width) sin(n pi x/width) exp(-i omega_n t).

    Returns exactly 0 for x outside [0, width].
    """
    _check_index(n)
    _check_width(width)
    phase = angular_frequency(n, width, cfg) * point.t
    return complex(spatial_amplitude(n, point.x, width) * np.exp(-1j * phase))


def density_at_widths(
    spec: SuperpositionSpec,
    x: float,
    t: float,
    widths: ArrayLike,
    cfg: WellConfig,
) -> ArrayLike:
    """
    |c_lo psi_lo + c_hi psi_hi|^2 at (x, t), evaluated literally from the
    complex amplitudes for every width in `widths`.
    """
    widths = np.asarray(widths, dtype=float)
    w_lo = angular_frequency(spec.n_lo, widths, cfg)
    w_hi = angular_frequency(spec.n_hi, widths, cfg)
    psi = spec.c_lo * spatial_amplitude(spec.n_lo, x, widths) * np.exp(-1j * w_lo * t)
    psi = psi + spec.c_hi * spatial_amplitude(spec.n_hi, x, widths) * np.exp(
        -1j * w_hi * t
    )
    density = np.square(psi.real) + np.square(psi.imag)
    return density if np.ndim(density) else float(density)


def fixed_density(
    spec: SuperpositionSpec, point: EvalPoint, width: float, cfg: WellConfig
) -> float:
    """
    Probability density of the superposition in a well of fixed width.

    The interference term is signed: for the default pair it equals
    (2/width) sin(pi x/width) sin(2 pi x/width) cos(omega t).
    """
    _check_width(width)
    return float(density_at_widths(spec, point.x, point.t, width, cfg))


def fixed_interference(
    spec: SuperpositionSpec, point: EvalPoint, width: float, cfg: WellConfig
) -> float:
    """Signed cross term psi_lo(x) psi_hi(x) cos(omega t - phase), unweighted."""
    _check_width(width)
    omega = bohr_frequency(spec, width, cfg)
    return float(
        spatial_amplitude(spec.n_lo, point.x, width)
        * spatial_amplitude(spec.n_hi, point.x, width)
        * np.cos(omega * point.t - spec.relative_phase)
    )


def mixture_density(spec: SuperpositionSpec, x: ArrayLike, width: float) -> ArrayLike:
    """Statistical-mixture density |c_lo|^2 |psi_lo|^2 + |c_hi|^2 |psi_hi|^2."""
    _check_width(width)
    return spec.weight_lo * np.square(
        spatial_amplitude(spec.n_lo, x, width)
    ) + spec.weight_hi * np.square(spatial_amplitude(spec.n_hi, x, width))


def oscillation_bounds(spec: SuperpositionSpec, x: float, width: float) -> Tuple[float, float]:
    """
    Minimum and maximum of the fixed density at x over one Bohr period.

    (|c_lo psi_lo| -+ |c_hi psi_hi|)^2; for the default pair this is
    (|psi_1| -+ |psi_2|)^2 / 2.
    """
    lo = abs(spec.c_lo) * abs(spatial_amplitude(spec.n_lo, x, width))
    hi = abs(spec.c_hi) * abs(spatial_amplitude(spec.n_hi, x, width))
    return (lo - hi) ** 2, (lo + hi) ** 2


def interference_bracket(spec: SuperpositionSpec, x: ArrayLike, cfg: WellConfig) -> ArrayLike:
    """
    (1/a_bar)[cos((n_hi-n_lo) pi x/a_bar) - cos((n_hi+n_lo) pi x/a_bar)].

    Product-to-sum form of psi_lo(x) psi_hi(x) at the mean width.
    """
    u = pi * np.asarray(x, dtype=float) / cfg.a_bar
    bracket = (np.cos(spec.q_difference * u) - np.cos(spec.q_sum * u)) / cfg.a_bar
    return bracket if np.ndim(bracket) else float(bracket)


def density_normalization(
    spec: SuperpositionSpec, t: float, width: float, cfg: WellConfig
) -> float:
    """Integral of the fixed density over [0, width] at time t."""
    _check_width(width)
    value, abserr = integrate.quad(
        lambda x: density_at_widths(spec, x, t, width, cfg),
        0.0,
        width,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    logger.debug("normalization %.15f (quad abserr %.1e)", value, abserr)
    return float(value)
