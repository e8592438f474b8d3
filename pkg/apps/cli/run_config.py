"""Run configuration for the fluctwell CLI.

Sources, lowest to highest precedence: built-in defaults (the x/a_bar = 0.7,
sigma = 0.01 reproduction run), a config document (YAML or JSON), the
FLUCTWELL_SEED environment variable (seed only) and command-line flags.
"""
import copy
import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, TypeVar

import numpy as np
import yaml

from core.errors import ConfigValidationError, FluctwellError
from core.ensemble import MonteCarloSpec, NoiseModel, QuadratureSpec
from core.well import SuperpositionSpec, WellConfig
from core.well.constants import AMU

logger = logging.getLogger(__name__)

SEED_ENV_VAR = "FLUCTWELL_SEED"

DEFAULT_X_OVER_ABAR = 0.7
DEFAULT_OMEGA_T_START = 0.0
DEFAULT_OMEGA_T_STOP = 300.0
DEFAULT_OMEGA_T_STEPS = 601
DEFAULT_K_MAX = 47
DEFAULT_TOLERANCE = 1e-2

T = TypeVar("T")


class OutputFormat(Enum):
    """Dataset serialization."""

    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class OmegaTRange:
    """Evenly spaced w_bar t values, endpoints included."""

    start: float = DEFAULT_OMEGA_T_START
    stop: float = DEFAULT_OMEGA_T_STOP
    steps: int = DEFAULT_OMEGA_T_STEPS

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise ConfigValidationError("omega_t.steps", f"must be >= 2, got {self.steps}")
        if not self.start < self.stop:
            raise ConfigValidationError(
                "omega_t.stop", f"must exceed start ({self.start}), got {self.stop}"
            )
        if self.start < 0:
            raise ConfigValidationError("omega_t.start", f"must be >= 0, got {self.start}")

    def values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"start": self.start, "stop": self.stop, "steps": self.steps}


@dataclass(frozen=True)
class BoundarySpec:
    """Wall modeled as a mass in a harmonic potential."""

    mass_amu: float
    omega0: float

    def __post_init__(self) -> None:
        if not self.mass_amu > 0:
            raise ConfigValidationError("boundary.mass_amu", f"must be > 0, got {self.mass_amu}")
        if not self.omega0 > 0:
            raise ConfigValidationError("boundary.omega0", f"must be > 0, got {self.omega0}")

    @property
    def mass(self) -> float:
        """Wall mass in kg."""
        return self.mass_amu * AMU

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"mass_amu": self.mass_amu, "omega0": self.omega0}


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run needs."""

    spec: SuperpositionSpec = field(default_factory=SuperpositionSpec)
    noise: NoiseModel = field(default_factory=NoiseModel)
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    mc: MonteCarloSpec = field(default_factory=MonteCarloSpec)
    mc_enabled: bool = True
    cfg: WellConfig = field(default_factory=WellConfig)
    x_over_abar: Tuple[float, ...] = (DEFAULT_X_OVER_ABAR,)
    x_points: Optional[int] = None  # interior grid k/(N+1), overrides x_over_abar
    omega_t_range: OmegaTRange = field(default_factory=OmegaTRange)
    omega_t_points: Optional[Tuple[float, ...]] = None  # overrides the range
    k_max: int = DEFAULT_K_MAX
    tolerance: float = DEFAULT_TOLERANCE
    boundary: Optional[BoundarySpec] = None
    output_path: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV

    def __post_init__(self) -> None:
        if not self.x_over_abar:
            raise ConfigValidationError("x_over_abar", "needs at least one value")
        for i, x in enumerate(self.x_over_abar):
            if not 0.0 < x < 1.0:
                raise ConfigValidationError(f"x_over_abar[{i}]", f"must lie in (0, 1), got {x}")
        if self.x_points is not None and self.x_points < 1:
            raise ConfigValidationError("x_points", f"must be >= 1, got {self.x_points}")
        if self.omega_t_points is not None:
            if not self.omega_t_points:
                raise ConfigValidationError("omega_t_points", "needs at least one value")
            for i, value in enumerate(self.omega_t_points):
                if value < 0:
                    raise ConfigValidationError(
                        f"omega_t_points[{i}]", f"must be >= 0, got {value}"
                    )
        if self.k_max < 4:
            raise ConfigValidationError("envelope.k_max", f"must be >= 4, got {self.k_max}")
        if not self.tolerance > 0:
            raise ConfigValidationError("compare.tolerance", f"must be > 0, got {self.tolerance}")

    @property
    def monte_carlo(self) -> Optional[MonteCarloSpec]:
        """Monte-Carlo settings, None when the oracle is switched off."""
        return self.mc if self.mc_enabled else None

    def x_grid(self) -> List[float]:
        """x / a_bar values of the run."""
        if self.x_points is not None:
            n = self.x_points
            return [k / (n + 1) for k in range(1, n + 1)]
        return list(self.x_over_abar)

    def omega_t_grid(self) -> List[float]:
        """w_bar t values of the run."""
        if self.omega_t_points is not None:
            return list(self.omega_t_points)
        return self.omega_t_range.values()

    @property
    def snapshot_omega_t(self) -> float:
        """w_bar t of a profile snapshot (the end of the time range)."""
        return self.omega_t_range.stop

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the config document layout."""
        data: Dict[str, Any] = {
            "spec": self.spec.to_dict(),
            "noise": self.noise.to_dict(),
            "quadrature": self.quad.to_dict(),
            "monte_carlo": dict(self.mc.to_dict(), enabled=self.mc_enabled),
            "well": self.cfg.to_dict(),
            "x_over_abar": list(self.x_over_abar),
            "omega_t": self.omega_t_range.to_dict(),
            "envelope": {"k_max": self.k_max},
            "compare": {"tolerance": self.tolerance},
            "format": self.format.value,
        }
        if self.x_points is not None:
            data["x_points"] = self.x_points
        if self.omega_t_points is not None:
            data["omega_t_points"] = list(self.omega_t_points)
        if self.boundary is not None:
            data["boundary"] = self.boundary.to_dict()
        if self.output_path is not None:
            data["output"] = str(self.output_path)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        """Create from a config document; missing keys take the defaults."""
        if not isinstance(data, Mapping):
            raise ConfigValidationError("<root>", "config document must be a mapping")

        kwargs: Dict[str, Any] = {}
        if "spec" in data:
            kwargs["spec"] = _parse(
                "spec", lambda: SuperpositionSpec.from_dict(_section(data, "spec"))
            )
        if "noise" in data:
            kwargs["noise"] = _parse(
                "noise", lambda: NoiseModel.from_dict(_section(data, "noise"))
            )
        if "quadrature" in data:
            kwargs["quad"] = _parse(
                "quadrature", lambda: QuadratureSpec.from_dict(_section(data, "quadrature"))
            )
        if "monte_carlo" in data:
            section = _section(data, "monte_carlo")
            kwargs["mc"] = _parse("monte_carlo", lambda: MonteCarloSpec.from_dict(section))
            kwargs["mc_enabled"] = bool(section.get("enabled", True))
        if "well" in data:
            kwargs["cfg"] = _parse("well", lambda: WellConfig.from_dict(_section(data, "well")))
        if "x_over_abar" in data:
            kwargs["x_over_abar"] = tuple(_float_list("x_over_abar", data["x_over_abar"]))
        if data.get("x_points") is not None:
            kwargs["x_points"] = _parse("x_points", lambda: int(data["x_points"]))
        if "omega_t" in data:
            kwargs["omega_t_range"] = _omega_t_range(data["omega_t"])
        if data.get("omega_t_points") is not None:
            kwargs["omega_t_points"] = tuple(_float_list("omega_t_points", data["omega_t_points"]))
        if "envelope" in data:
            envelope = _section(data, "envelope")
            kwargs["k_max"] = _parse(
                "envelope.k_max", lambda: int(envelope.get("k_max", DEFAULT_K_MAX))
            )
        if "compare" in data:
            compare = _section(data, "compare")
            kwargs["tolerance"] = _parse(
                "compare.tolerance", lambda: float(compare.get("tolerance", DEFAULT_TOLERANCE))
            )
        if data.get("boundary") is not None:
            boundary = _section(data, "boundary")
            kwargs["boundary"] = _parse(
                "boundary",
                lambda: BoundarySpec(
                    mass_amu=float(boundary["mass_amu"]), omega0=float(boundary["omega0"])
                ),
            )
        if data.get("output") is not None:
            kwargs["output_path"] = Path(str(data["output"]))
        if "format" in data:
            try:
                kwargs["format"] = OutputFormat(str(data["format"]).lower())
            except ValueError:
                raise ConfigValidationError(
                    "format", f"must be csv or json, got {data['format']!r}"
                ) from None
        return cls(**kwargs)


def _parse(field_path: str, build: Callable[[], T]) -> T:
    """Run a section parser, reporting stray type errors under field_path."""
    try:
        return build()
    except FluctwellError:
        raise
    except KeyError as exc:
        raise ConfigValidationError(f"{field_path}.{exc.args[0]}", "missing") from None
    except (TypeError, ValueError) as exc:
        raise ConfigValidationError(field_path, str(exc)) from None


def _section(data: Mapping[str, Any], key: str) -> Mapping[str, Any]:
    value = data.get(key) or {}
    if not isinstance(value, Mapping):
        raise ConfigValidationError(key, "must be a mapping")
    return value


def _float_list(field_path: str, value: Any) -> List[float]:
    values = value if isinstance(value, (list, tuple)) else [value]
    return [_parse(f"{field_path}[{i}]", lambda v=v: float(v)) for i, v in enumerate(values)]


def _omega_t_range(value: Any) -> OmegaTRange:
    """A mapping {start, stop, steps}, or a bare number meaning stop."""
    if isinstance(value, Mapping):
        return _parse(
            "omega_t",
            lambda: OmegaTRange(
                start=float(value.get("start", DEFAULT_OMEGA_T_START)),
                stop=float(value.get("stop", DEFAULT_OMEGA_T_STOP)),
                steps=int(value.get("steps", DEFAULT_OMEGA_T_STEPS)),
            ),
        )
    return _parse("omega_t", lambda: OmegaTRange(stop=float(value)))


def load_config_document(path: Path) -> Dict[str, Any]:
    """
    Read a YAML or JSON config document.

    Raises:
        OSError: the file cannot be read
        ConfigValidationError: the document does not parse to a mapping
    """
    with open(path, encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as exc:
            raise ConfigValidationError("<root>", f"unparseable config {path}: {exc}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigValidationError("<root>", "config document must be a mapping")
    return data


def set_path(data: Dict[str, Any], dotted: str, value: Any) -> None:
    """Set data[a][b] = value for dotted path 'a.b', creating sections."""
    *parents, leaf = dotted.split(".")
    node = data
    for key in parents:
        child = node.get(key)
        if not isinstance(child, dict):
            # A bare-number omega_t still means its stop value
            child = {"stop": child} if key == "omega_t" and child is not None else {}
            node[key] = child
        node = child
    node[leaf] = value


def resolve_run_config(
    config_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Merge defaults, config document, environment and flag overrides.

    Args:
        config_path: Optional YAML/JSON document
        overrides: Dotted config paths set from flags; None values are ignored
        environ: Environment (defaults to os.environ)

    Returns:
        Validated RunConfig
    """
    data: Dict[str, Any] = {}
    if config_path is not None:
        data = copy.deepcopy(load_config_document(config_path))
        logger.debug("loaded config document %s", config_path)

    env = os.environ if environ is None else environ
    seed = env.get(SEED_ENV_VAR)
    if seed:
        try:
            set_path(data, "monte_carlo.seed", int(seed))
        except ValueError:
            raise ConfigValidationError(SEED_ENV_VAR, f"not an integer: {seed!r}") from None

    for dotted, value in (overrides or {}).items():
        if value is not None:
            set_path(data, dotted, value)
    return RunConfig.from_dict(data)
