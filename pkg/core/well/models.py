"""Data models for the fixed-boundary infinite well.

Dataclasses for the unit system, the two-state superposition and the
evaluation point. Follows the to_dict/from_dict pattern used by every
model in core/.
"""
from dataclasses import dataclass
from enum import Enum
from math import atan2, isclose, sqrt
from typing import Any, Dict, Union

from core.errors import ConfigValidationError, DomainError

from .constants import ANGSTROM, ELECTRON_MASS, HBAR, NORMALIZATION_TOL


class UnitMode(Enum):
    """Unit system for a well configuration."""

    DIMENSIONLESS = "dimensionless"  # hbar = m = a_bar = 1
    PHYSICAL = "physical"  # SI units, used by the timescale helpers


@dataclass(frozen=True)
class WellConfig:
    """
    Unit system and the parameters that fix every frequency of the well.

    In dimensionless mode a_bar, mass and hbar are exactly 1 and time is
    measured in units of m a_bar^2 / hbar.
    """

    unit_mode: UnitMode = UnitMode.DIMENSIONLESS
    a_bar: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("a_bar", "mass", "hbar"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigValidationError(f"well.{name}", f"must be > 0, got {value}")
        if self.unit_mode is UnitMode.DIMENSIONLESS:
            for name in ("a_bar", "mass", "hbar"):
                if getattr(self, name) != 1.0:
                    raise ConfigValidationError(
                        f"well.{name}", "must equal 1 in dimensionless mode"
                    )

    @classmethod
    def dimensionless(cls) -> "WellConfig":
        """hbar = m = a_bar = 1."""
        return cls()

    @classmethod
    def physical(
        cls,
        a_bar: float = ANGSTROM,
        mass: float = ELECTRON_MASS,
        hbar: float = HBAR,
    ) -> "WellConfig":
        """SI configuration; defaults to an electron in a 1 Angstrom well."""
        return cls(UnitMode.PHYSICAL, a_bar=a_bar, mass=mass, hbar=hbar)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "unit_mode": self.unit_mode.value,
            "a_bar": self.a_bar,
            "mass": self.mass,
            "hbar": self.hbar,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WellConfig":
        """Create from dictionary.

        Physical mode fills missing fields with the electron / 1 Angstrom
        defaults.
        """
        try:
            mode = UnitMode(data.get("unit_mode", UnitMode.DIMENSIONLESS.value))
        except ValueError:
            raise ConfigValidationError(
                "well.unit_mode", f"unknown unit mode {data.get('unit_mode')!r}"
            ) from None
        if mode is UnitMode.DIMENSIONLESS:
            return cls(
                mode,
                a_bar=float(data.get("a_bar", 1.0)),
                mass=float(data.get("mass", 1.0)),
                hbar=float(data.get("hbar", 1.0)),
            )
        return cls.physical(
            a_bar=float(data.get("a_bar", ANGSTROM)),
            mass=float(data.get("mass", ELECTRON_MASS)),
            hbar=float(data.get("hbar", HBAR)),
        )


def _parse_amplitude(value: Any, field_path: str) -> complex:
    """Accept a number, a [re, im] pair or a complex."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigValidationError(field_path, "expected [re, im]")
        return complex(float(value[0]), float(value[1]))
    try:
        return complex(value)
    except (TypeError, ValueError):
        raise ConfigValidationError(field_path, f"not a number: {value!r}") from None


@dataclass(frozen=True)
class SuperpositionSpec:
    """
    Two-state superposition c_lo psi_{n_lo} + c_hi psi_{n_hi}.

    The default is the equal-weight ground/first-excited pair.
    A spec with c_hi = 0 is a single eigenstate.
    """

    n_lo: int = 1
    n_hi: int = 2
    c_lo: complex = complex(1 / sqrt(2))
    c_hi: complex = complex(1 / sqrt(2))

    def __post_init__(self) -> None:
        if not 1 <= self.n_lo < self.n_hi:
            raise ConfigValidationError(
                "spec", f"need 1 <= n_lo < n_hi, got ({self.n_lo}, {self.n_hi})"
            )
        norm = abs(self.c_lo) ** 2 + abs(self.c_hi) ** 2
        if not isclose(norm, 1.0, rel_tol=0.0, abs_tol=NORMALIZATION_TOL):
            raise ConfigValidationError(
                "spec", f"|c_lo|^2 + |c_hi|^2 = {norm!r}, must be 1"
            )

    @classmethod
    def single(cls, n: int) -> "SuperpositionSpec":
        """The stationary eigenstate psi_n."""
        return cls(n_lo=n, n_hi=n + 1, c_lo=1.0 + 0j, c_hi=0j)

    @property
    def is_stationary(self) -> bool:
        """True when one amplitude vanishes (no interference term)."""
        return self.c_lo == 0 or self.c_hi == 0

    @property
    def weight_lo(self) -> float:
        return abs(self.c_lo) ** 2

    @property
    def weight_hi(self) -> float:
        return abs(self.c_hi) ** 2

    @property
    def interference_weight(self) -> float:
        """2|c_lo||c_hi|, the prefactor of the cross term."""
        return 2.0 * abs(self.c_lo) * abs(self.c_hi)

    @property
    def relative_phase(self) -> float:
        """arg(c_hi) - arg(c_lo); the cross term oscillates as cos(wt - phase)."""
        if self.is_stationary:
            return 0.0
        return atan2(self.c_hi.imag, self.c_hi.real) - atan2(
            self.c_lo.imag, self.c_lo.real
        )

    @property
    def q_difference(self) -> int:
        return self.n_hi - self.n_lo

    @property
    def q_sum(self) -> int:
        return self.n_hi + self.n_lo

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "c_lo": [self.c_lo.real, self.c_lo.imag],
            "c_hi": [self.c_hi.real, self.c_hi.imag],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SuperpositionSpec":
        """Create from dictionary."""
        default = cls()
        return cls(
            n_lo=int(data.get("n_lo", default.n_lo)),
            n_hi=int(data.get("n_hi", default.n_hi)),
            c_lo=_parse_amplitude(data.get("c_lo", default.c_lo), "spec.c_lo"),
            c_hi=_parse_amplitude(data.get("c_hi", default.c_hi), "spec.c_hi"),
        )


Number = Union[int, float]


@dataclass(frozen=True)
class EvalPoint:
    """Lab-frame position x and time t at which a density is evaluated."""

    x: float
    t: float = 0.0

    def __post_init__(self) -> None:
        if self.x < 0:
            raise DomainError(f"position must be >= 0, got {self.x}")

    @classmethod
    def from_phase(cls, x: Number, omega_t: Number, omega_bar: Number) -> "EvalPoint":
        """Point at dimensionless time omega_bar * t = omega_t."""
        return cls(float(x), float(omega_t) / float(omega_bar))

    def to_dict(self) -> Dict[str, float]:
        """Convert to dictionary."""
        return {"x": self.x, "t": self.t}
