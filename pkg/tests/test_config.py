"""Tests for configuration loading and validation."""

import json
from pathlib import Path

import pytest

from servo_pidnn.controllers import KUHN_GAINS, PidGains
from servo_pidnn.core.config import ConfigError, RunConfig, load_config, parse_config
from servo_pidnn.pidnn import UnknownPresetError
from servo_pidnn.simloop import PidnnSpec, PidSpec


DATA_DIR = Path(__file__).parent / "data"


class TestParseConfig:
    """Tests for parse_config."""

    def test_minimal_config_defaults(self) -> None:
        """Test that a scenario and one controller are enough."""
        config = parse_config("scenario: step200\ncontrollers: [pid-kuhn]\n")

        assert isinstance(config, RunConfig)
        assert config.model.gain_Ks == 0.946
        assert config.model.time_constant_T == 0.4425
        assert config.model.dead_time_L == 0.0325
        assert config.period_Ts == 0.01
        assert config.sub_step_h == 0.0005
        assert config.sensor.rpm_per_volt == 200.0
        assert config.actuator_limits == (-10.0, 10.0)
        assert config.band_pct == 2.0
        assert config.alt_band_pct == 5.0
        assert config.controllers == (PidSpec("pid-kuhn", KUHN_GAINS),)
        assert config.scenario.name == "step200"
        assert config.log_file is None

    def test_single_controller_string(self) -> None:
        """Test that controllers may be a single name."""
        config = parse_config("scenario: step200\ncontrollers: pidnn\n")

        assert [c.name for c in config.controllers] == ["pidnn"]

    def test_empty_text_lists_required_keys(self) -> None:
        """Test that an empty document reports every required key."""
        with pytest.raises(ConfigError, match="scenario, controllers"):
            parse_config("")

    def test_zero_period(self) -> None:
        """Test that Ts = 0 is rejected by name."""
        with pytest.raises(ConfigError, match="period_Ts must be > 0"):
            parse_config("scenario: step200\ncontrollers: [pidnn]\nperiod_Ts: 0\n")

    def test_yaml_error_has_line_number(self) -> None:
        """Test that syntax errors carry their line."""
        with pytest.raises(ConfigError, match="Invalid YAML at line"):
            parse_config("scenario: step200\ncontrollers: [pidnn\nband_pct: 2\n")

    def test_unknown_key(self) -> None:
        """Test that unknown keys are rejected."""
        with pytest.raises(ConfigError, match="Unknown config keys: seed"):
            parse_config("scenario: step200\ncontrollers: [pidnn]\nseed: 4\n")

    def test_invalid_type(self) -> None:
        """Test that a wrongly typed value names its key."""
        with pytest.raises(ConfigError, match="Invalid type for band_pct"):
            parse_config("scenario: step200\ncontrollers: [pidnn]\nband_pct: wide\n")

    def test_int_promoted_to_float(self) -> None:
        """Test that integer values are accepted for float keys."""
        config = parse_config("scenario: step200\ncontrollers: [pidnn]\nband_pct: 5\n")

        assert config.band_pct == 5.0
        assert isinstance(config.band_pct, float)

    def test_non_divisible_dead_time(self) -> None:
        """Test that the dead time must be a multiple of the sub-step."""
        with pytest.raises(ConfigError, match="dead_time_L"):
            parse_config(
                "scenario: step200\ncontrollers: [pidnn]\ndead_time_L: 0.0333\n"
            )

    def test_invalid_plant_parameter(self) -> None:
        """Test that plant invariants surface as ConfigError."""
        with pytest.raises(ConfigError, match="time_constant_T must be > 0"):
            parse_config("scenario: step200\ncontrollers: [pidnn]\ntime_constant_T: -1\n")

    def test_custom_controllers(self) -> None:
        """Test inline pid and pidnn controller entries."""
        text = """
scenario: staircase
controllers:
  - {type: pid, name: slow, kp: 0.5, ki: 1, kd: 0}
  - type: pidnn
    name: fast
    learning_rate: 0.05
    hidden_learning_rate: 0.01
  - {type: pidnn, name: plain, preset: unit-rows}
"""
        config = parse_config(text)
        slow, fast, plain = config.controllers

        assert isinstance(slow, PidSpec)
        assert slow.gains.ki == 1.0
        assert isinstance(fast, PidnnSpec)
        assert fast.learn.rate_eta == 0.05
        assert fast.learn.hidden_rate_eta == 0.01
        assert plain.preset == "unit-rows"
        assert plain.learn is None

    def test_learning_disabled_entry(self) -> None:
        """Test that learning: false freezes the network."""
        config = parse_config(
            "scenario: step200\ncontrollers:\n  - {type: pidnn, name: f, learning: false}\n"
        )

        assert config.controllers[0].learn.enabled is False

    def test_unknown_preset(self) -> None:
        """Test that an unknown preset fails at config time."""
        with pytest.raises(UnknownPresetError):
            parse_config(
                "scenario: step200\ncontrollers:\n"
                "  - {type: pidnn, name: x, preset: huge}\n"
            )

    def test_duplicate_names(self) -> None:
        """Test that two controllers cannot share a name."""
        with pytest.raises(ConfigError, match="Duplicate controller names: pidnn"):
            parse_config("scenario: step200\ncontrollers: [pidnn, pidnn]\n")

    def test_unknown_controller_key(self) -> None:
        """Test that misspelled controller keys are rejected."""
        with pytest.raises(ConfigError, match="unknown keys: kdd"):
            parse_config(
                "scenario: step200\ncontrollers:\n"
                "  - {type: pid, name: p, kp: 1, ki: 1, kd: 1, kdd: 2}\n"
            )

    def test_overrides_replace_values(self) -> None:
        """Test that overrides win over the document and None is ignored."""
        config = parse_config(
            "scenario: step200\ncontrollers: [pidnn]\nband_pct: 2\n",
            overrides={"band_pct": 5.0, "output_dir": None, "plot": False},
        )

        assert config.band_pct == 5.0
        assert config.output_dir == Path("out")
        assert config.plot is False


class TestLoadConfig:
    """Tests for load_config."""

    def test_load_minimal_file(self) -> None:
        """Test loading a minimal config from disk."""
        config = load_config(DATA_DIR / "minimal.yaml")

        assert config.scenario_ref == "step200"
        assert config.controllers[0].name == "pid-kuhn"

    def test_scenario_path_relative_to_config(self, tmp_path: Path) -> None:
        """Test that scenario files resolve next to the config file."""
        (tmp_path / "scen.yaml").write_text(
            (DATA_DIR / "short_steps.yaml").read_text()
        )
        config_file = tmp_path / "settings.yaml"
        config_file.write_text("scenario: scen.yaml\ncontrollers: [pidnn]\n")

        config = load_config(config_file)

        assert config.scenario.name == "short_steps"

    def test_missing_file(self) -> None:
        """Test that a missing config file raises ConfigError."""
        with pytest.raises(ConfigError, match="Configuration file not found"):
            load_config(Path("/nonexistent/settings.yaml"))

    def test_shipped_settings_are_valid(self) -> None:
        """Test that config/settings.yaml parses."""
        config = load_config(Path(__file__).parent.parent / "config" / "settings.yaml")

        assert [c.name for c in config.controllers] == ["pidnn", "pid-kuhn", "pid-unit"]


class TestGoldenConfig:
    """Tests that the full config grammar parses to a frozen result."""

    def test_every_key_matches_golden_summary(self) -> None:
        """Test a config setting every key against its stored summary."""
        golden = DATA_DIR / "golden"

        config = load_config(golden / "full_config.yaml")
        expected = json.loads((golden / "full_config.summary.json").read_text())

        assert config.summary() == expected
        assert config.output_dir == Path("results")
        assert (config.plot, config.workers) == (False, 2)
        assert (config.log_level, config.log_file) == ("DEBUG", "logs/golden.log")
        assert config.scenario.name == "short_steps"

    def test_golden_controller_entries(self) -> None:
        """Test the parsed controller specs of the golden config."""
        config = load_config(DATA_DIR / "golden" / "full_config.yaml")
        kuhn, slow, fast = config.controllers

        assert kuhn == PidSpec("pid-kuhn", KUHN_GAINS)
        assert slow.gains == PidGains(kp=0.5, ki=1.0, kd=0.0)
        assert fast.preset == "unit-rows"
        assert fast.learn.rate_eta == 0.05
        assert fast.learn.hidden_rate_eta == 0.01
        assert fast.learn.jacobian == "difference"

    def test_not_utf8(self, tmp_path: Path) -> None:
        """Test that an undecodable config file is a ConfigError."""
        path = tmp_path / "settings.yaml"
        path.write_bytes(b"scenario: step200\ncontrollers: [\xff]\n")

        with pytest.raises(ConfigError, match="not UTF-8"):
            load_config(path)
