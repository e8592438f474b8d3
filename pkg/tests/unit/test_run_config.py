"""Unit tests for the CLI run configuration."""
import json

import pytest

from apps.cli.run_config import (
    SEED_ENV_VAR,
    BoundarySpec,
    OmegaTRange,
    OutputFormat,
    RunConfig,
    load_config_document,
    resolve_run_config,
    set_path,
)
from core.errors import ConfigValidationError
from core.well import AMU, UnitMode


class TestOmegaTRange:
    """Tests for OmegaTRange."""

    def test_defaults(self):
        values = OmegaTRange().values()
        assert len(values) == 601
        assert values[0] == 0.0
        assert values[-1] == 300.0
        assert values[1] == pytest.approx(0.5)

    def test_single_step_rejected(self):
        with pytest.raises(ConfigValidationError) as exc_info:
            OmegaTRange(steps=1)
        assert exc_info.value.field_path == "omega_t.steps"

    def test_reversed_range_rejected(self):
        with pytest.raises(ConfigValidationError, match="omega_t.stop"):
            OmegaTRange(start=10.0, stop=5.0)

    def test_negative_start_rejected(self):
        with pytest.raises(ConfigValidationError, match="omega_t.start"):
            OmegaTRange(start=-1.0, stop=5.0)


class TestRunConfig:
    """Tests for RunConfig validation and grids."""

    def test_defaults(self):
        config = RunConfig()
        assert config.x_grid() == [0.7]
        assert config.noise.sigma == 0.01
        assert config.k_max == 47
        assert config.format is OutputFormat.CSV
        assert config.monte_carlo is config.mc

    @pytest.mark.parametrize("x", [0.0, 1.0, -0.2, 1.5])
    def test_position_outside_well_rejected(self, x):
        with pytest.raises(ConfigValidationError) as exc_info:
            RunConfig(x_over_abar=(0.5, x))
        assert exc_info.value.field_path == "x_over_abar[1]"

    def test_interior_grid(self):
        config = RunConfig(x_points=3)
        assert config.x_grid() == [0.25, 0.5, 0.75]

    def test_explicit_omega_t_points(self):
        config = RunConfig(omega_t_points=(0.0, 10.0, 50.0))
        assert config.omega_t_grid() == [0.0, 10.0, 50.0]

    def test_small_k_max_rejected(self):
        with pytest.raises(ConfigValidationError, match="envelope.k_max"):
            RunConfig(k_max=2)

    def test_non_positive_tolerance_rejected(self):
        with pytest.raises(ConfigValidationError, match="compare.tolerance"):
            RunConfig(tolerance=0.0)

    def test_monte_carlo_disabled(self):
        assert RunConfig(mc_enabled=False).monte_carlo is None

    def test_snapshot_is_range_stop(self):
        config = RunConfig(omega_t_range=OmegaTRange(stop=120.0))
        assert config.snapshot_omega_t == 120.0

    def test_round_trip(self):
        config = RunConfig(
            x_over_abar=(0.2, 0.7),
            omega_t_points=(0.0, 10.0),
            boundary=BoundarySpec(30.0, 1e15),
            format=OutputFormat.JSON,
        )
        assert RunConfig.from_dict(config.to_dict()) == config


class TestFromDict:
    """Tests for RunConfig.from_dict()."""

    def test_empty_document_gives_defaults(self):
        assert RunConfig.from_dict({}) == RunConfig()

    def test_sections(self):
        config = RunConfig.from_dict(
            {
                "noise": {"sigma": 0.02},
                "quadrature": {"nodes": 64},
                "monte_carlo": {"samples": 5000, "seed": 7, "enabled": False},
                "well": {"unit_mode": "physical"},
                "x_over_abar": [0.2, 0.5],
                "omega_t": {"start": 0, "stop": 50, "steps": 11},
                "envelope": {"k_max": 30},
                "compare": {"tolerance": 0.02},
                "format": "JSON",
            }
        )
        assert config.noise.sigma == 0.02
        assert config.quad.nodes == 64
        assert config.mc.seed == 7
        assert config.monte_carlo is None
        assert config.cfg.unit_mode is UnitMode.PHYSICAL
        assert config.x_grid() == [0.2, 0.5]
        assert len(config.omega_t_grid()) == 11
        assert config.k_max == 30
        assert config.tolerance == 0.02
        assert config.format is OutputFormat.JSON

    def test_bare_omega_t_is_stop(self):
        config = RunConfig.from_dict({"omega_t": 100})
        assert config.omega_t_range.stop == 100.0
        assert config.omega_t_range.steps == 601

    def test_scalar_position(self):
        assert RunConfig.from_dict({"x_over_abar": 0.3}).x_grid() == [0.3]

    def test_bad_number_reports_field(self):
        with pytest.raises(ConfigValidationError) as exc_info:
            RunConfig.from_dict({"x_over_abar": [0.2, "left"]})
        assert exc_info.value.field_path == "x_over_abar[1]"

    def test_sigma_out_of_range(self):
        with pytest.raises(ConfigValidationError) as exc_info:
            RunConfig.from_dict({"noise": {"sigma": 0.2}})
        assert exc_info.value.field_path == "noise.sigma"

    def test_boundary_missing_key(self):
        with pytest.raises(ConfigValidationError) as exc_info:
            RunConfig.from_dict({"boundary": {"mass_amu": 30}})
        assert exc_info.value.field_path == "boundary.omega0"

    def test_boundary_mass(self):
        config = RunConfig.from_dict({"boundary": {"mass_amu": 30, "omega0": 1e15}})
        assert config.boundary.mass == pytest.approx(30 * AMU)

    def test_unknown_format(self):
        with pytest.raises(ConfigValidationError, match="format"):
            RunConfig.from_dict({"format": "xml"})

    def test_section_must_be_mapping(self):
        with pytest.raises(ConfigValidationError, match="noise"):
            RunConfig.from_dict({"noise": [0.01]})


class TestConfigDocuments:
    """Tests for load_config_document() and set_path()."""

    def test_yaml(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("noise:\n  sigma: 0.02\nx_over_abar: [0.3]\n", encoding="utf-8")
        assert load_config_document(path) == {"noise": {"sigma": 0.02}, "x_over_abar": [0.3]}

    def test_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"envelope": {"k_max": 12}}), encoding="utf-8")
        assert load_config_document(path) == {"envelope": {"k_max": 12}}

    def test_empty_document(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config_document(path) == {}

    def test_non_mapping_document(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ConfigValidationError):
            load_config_document(path)

    def test_unparseable_document(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("noise: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigValidationError):
            load_config_document(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config_document(tmp_path / "absent.yaml")

    def test_set_path_creates_sections(self):
        data = {}
        set_path(data, "monte_carlo.seed", 5)
        assert data == {"monte_carlo": {"seed": 5}}

    def test_set_path_keeps_bare_omega_t(self):
        data = {"omega_t": 80}
        set_path(data, "omega_t.steps", 5)
        assert data == {"omega_t": {"stop": 80, "steps": 5}}


class TestResolveRunConfig:
    """Tests for resolve_run_config() precedence."""

    def test_defaults(self):
        assert resolve_run_config(environ={}) == RunConfig()

    def test_env_seed(self):
        config = resolve_run_config(environ={SEED_ENV_VAR: "42"})
        assert config.mc.seed == 42

    def test_env_seed_must_be_integer(self):
        with pytest.raises(ConfigValidationError) as exc_info:
            resolve_run_config(environ={SEED_ENV_VAR: "abc"})
        assert exc_info.value.field_path == SEED_ENV_VAR

    def test_precedence(self, tmp_path):
        """Flags beat the environment, which beats the document."""
        path = tmp_path / "run.yaml"
        path.write_text(
            "noise:\n  sigma: 0.02\nmonte_carlo:\n  seed: 1\n  samples: 2000\n",
            encoding="utf-8",
        )
        config = resolve_run_config(path, environ={SEED_ENV_VAR: "2"})
        assert config.mc.seed == 2
        assert config.mc.samples == 2000
        assert config.noise.sigma == 0.02

        config = resolve_run_config(
            path,
            overrides={"monte_carlo.seed": 3, "noise.sigma": None},
            environ={SEED_ENV_VAR: "2"},
        )
        assert config.mc.seed == 3
        assert config.noise.sigma == 0.02
