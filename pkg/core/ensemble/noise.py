"""Gaussian width-noise model and the evaluation settings of the ensemble paths.

The well width of one realization is a = a_bar (1 + eps) with eps drawn
from f(eps) = sqrt(theta/pi) exp(-theta eps^2), sigma^2 = 1/(2 theta).
"""
from dataclasses import dataclass
from math import inf, pi, sqrt
from typing import Any, Dict, Union

import numpy as np

from core.errors import ConfigValidationError
from core.well.constants import SIGMA_CAP

ArrayLike = Union[float, np.ndarray]

DEFAULT_NODES = 128
MIN_NODES = 16
DEFAULT_RTOL = 1e-10
DEFAULT_SAMPLES = 100_000
MIN_SAMPLES = 100
DEFAULT_SEED = 12345


@dataclass(frozen=True)
class NoiseModel:
    """
    Width-fluctuation distribution.

    sigma = 0 is the fixed-boundary limit (theta is infinite and every
    ensemble average collapses onto the fixed-width value).
    """

    sigma: float = 0.01

    def __post_init__(self) -> None:
        if not 0.0 <= self.sigma <= SIGMA_CAP:
            raise ConfigValidationError(
                "noise.sigma", f"must lie in [0, {SIGMA_CAP}], got {self.sigma}"
            )

    @classmethod
    def fixed(cls) -> "NoiseModel":
        """No fluctuations."""
        return cls(sigma=0.0)

    @property
    def is_fixed(self) -> bool:
        return self.sigma == 0.0

    @property
    def theta(self) -> float:
        """theta = 1 / (2 sigma^2)."""
        if self.is_fixed:
            return inf
        return 1.0 / (2.0 * self.sigma * self.sigma)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"sigma": self.sigma}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NoiseModel":
        """Create from dictionary."""
        return cls(sigma=float(data.get("sigma", cls.sigma)))


@dataclass(frozen=True)
class QuadratureSpec:
    """Node count and convergence tolerance for the quadrature path."""

    nodes: int = DEFAULT_NODES
    convergence_rtol: float = DEFAULT_RTOL
    # Node count may double this many times before giving up (4x by default)
    max_doublings: int = 2

    def __post_init__(self) -> None:
        if self.nodes < MIN_NODES:
            raise ConfigValidationError(
                "quadrature.nodes", f"must be >= {MIN_NODES}, got {self.nodes}"
            )
        if not self.convergence_rtol > 0:
            raise ConfigValidationError(
                "quadrature.convergence_rtol",
                f"must be > 0, got {self.convergence_rtol}",
            )
        if self.max_doublings < 0:
            raise ConfigValidationError(
                "quadrature.max_doublings", "must be >= 0"
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "nodes": self.nodes,
            "convergence_rtol": self.convergence_rtol,
            "max_doublings": self.max_doublings,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuadratureSpec":
        """Create from dictionary."""
        return cls(
            nodes=int(data.get("nodes", DEFAULT_NODES)),
            convergence_rtol=float(data.get("convergence_rtol", DEFAULT_RTOL)),
            max_doublings=int(data.get("max_doublings", 2)),
        )


@dataclass(frozen=True)
class MonteCarloSpec:
    """
    Sample count, seed and parallelism of the Monte-Carlo oracle.

    `workers` only changes the schedule: output depends on (seed, samples)
    alone.
    """

    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    workers: int = 1

    def __post_init__(self) -> None:
        if self.samples < MIN_SAMPLES:
            raise ConfigValidationError(
                "monte_carlo.samples", f"must be >= {MIN_SAMPLES}, got {self.samples}"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigValidationError(
                "monte_carlo.seed", f"must be a 64-bit unsigned integer, got {self.seed}"
            )
        if self.workers < 1:
            raise ConfigValidationError(
                "monte_carlo.workers", f"must be >= 1, got {self.workers}"
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"samples": self.samples, "seed": self.seed, "workers": self.workers}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MonteCarloSpec":
        """Create from dictionary."""
        return cls(
            samples=int(data.get("samples", DEFAULT_SAMPLES)),
            seed=int(data.get("seed", DEFAULT_SEED)),
            workers=int(data.get("workers", 1)),
        )


def noise_pdf(eps: ArrayLike, noise: NoiseModel) -> ArrayLike:
    """
    Density of the width-fluctuation parameter, sqrt(theta/pi) exp(-theta eps^2).

    For the fixed-boundary model the density is a delta function; this
    returns inf at eps = 0 and 0 elsewhere.
    """
    eps = np.asarray(eps, dtype=float)
    if noise.is_fixed:
        value = np.where(eps == 0.0, inf, 0.0)
    else:
        theta = noise.theta
        value = sqrt(theta / pi) * np.exp(-theta * np.square(eps))
    return value if value.ndim else float(value)
