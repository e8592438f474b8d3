"""Decoherence timescales and physical-unit estimates.

The interference envelope decays as exp(-Gamma t^2) with
Gamma = 2 w_bar^2 sigma^2. Onset time t_o = 1/w_bar, decay time
t_d = 1/sqrt(Gamma) = t_o / (sqrt(2) sigma).

The boundary-width helpers model each wall as a mass M in the ground
state of a harmonic well of frequency omega0, whose position spread is
sqrt(hbar / (2 M omega0)).
"""
from dataclasses import dataclass
from math import inf, log, sqrt
from typing import Any, Dict

from core.ensemble import NoiseModel
from core.errors import DomainError
from core.well import SuperpositionSpec, WellConfig, bohr_frequency


@dataclass(frozen=True)
class DecayParameters:
    """Gamma, onset time, decay time and mean Bohr frequency for one sigma."""

    gamma: float
    t_onset: float
    t_decay: float
    omega_bar: float
    sigma: float

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "gamma": self.gamma,
            "t_onset": self.t_onset,
            "t_decay": self.t_decay,
            "omega_bar": self.omega_bar,
            "sigma": self.sigma,
        }


def decay_parameters(
    spec: SuperpositionSpec, noise: NoiseModel, cfg: WellConfig
) -> DecayParameters:
    """
    Decay rate and timescales of the interference envelope.

    For fixed boundaries Gamma is 0 and t_decay is infinite.
    """
    omega_bar = float(bohr_frequency(spec, cfg.a_bar, cfg))
    sigma = noise.sigma
    gamma = 2.0 * omega_bar * omega_bar * sigma * sigma
    t_onset = 1.0 / omega_bar
    t_decay = t_onset / (sqrt(2.0) * sigma) if sigma > 0 else inf
    return DecayParameters(gamma, t_onset, t_decay, omega_bar, sigma)


def time_from_phase(omega_t: float, params: DecayParameters) -> float:
    """Time at which w_bar t equals omega_t (seconds in physical mode)."""
    return omega_t / params.omega_bar


def suppression_time(params: DecayParameters, amplitude: float, threshold: float) -> float:
    """
    Time at which amplitude * exp(-Gamma t^2) falls to threshold.

    Returns 0 when the amplitude is already below threshold and inf for
    fixed boundaries.
    """
    if threshold <= 0:
        raise DomainError(f"threshold must be > 0, got {threshold}")
    if amplitude <= threshold:
        return 0.0
    if params.gamma == 0:
        return inf
    return sqrt(log(amplitude / threshold) / params.gamma)


def boundary_width_estimate(mass: float, omega0: float, cfg: WellConfig) -> float:
    """
    Ground-state position spread sqrt(hbar / (2 M omega0)) of a wall.

    Args:
        mass: Wall mass M (kg in physical mode)
        omega0: Angular frequency of the wall's confining potential
        cfg: Unit system supplying hbar

    Returns:
        Width spread Delta x
    """
    if not mass > 0:
        raise DomainError(f"wall mass must be > 0, got {mass}")
    if not omega0 > 0:
        raise DomainError(f"wall frequency must be > 0, got {omega0}")
    return sqrt(cfg.hbar / (2.0 * mass * omega0))


def sigma_from_boundary_width(delta_x: float, cfg: WellConfig) -> float:
    """Relative width fluctuation sigma = Delta x / a_bar."""
    if delta_x < 0:
        raise DomainError(f"width spread must be >= 0, got {delta_x}")
    return delta_x / cfg.a_bar
