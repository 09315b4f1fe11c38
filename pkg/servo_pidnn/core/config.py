"""Configuration management for servo simulations.

Loads a YAML run configuration with optional CLI overrides. Everything is
validated up front and returned as a frozen RunConfig, so a bad value
fails before any simulation starts.
"""

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

from servo_pidnn.controllers.base import (
    DEFAULT_ACTUATOR_LIMITS,
    DEFAULT_PERIOD_TS,
    validate_limits,
)
from servo_pidnn.controllers.pid import PidGains
from servo_pidnn.core.errors import ConfigError
from servo_pidnn.pidnn.network import LearnConfig
from servo_pidnn.pidnn.presets import get_preset
from servo_pidnn.plant.fopdt import DEFAULT_SUB_STEP_H, FopdtModel, delay_steps_for
from servo_pidnn.plant.sensor import SensorGain
from servo_pidnn.simloop.engine import substeps_per_period
from servo_pidnn.simloop.scenario import (
    ControllerSpec,
    PidnnSpec,
    PidSpec,
    Scenario,
    builtin_controller,
    load_scenario,
)


__all__ = ["ConfigError", "RunConfig", "load_config", "parse_config"]

REQUIRED_KEYS = ("scenario", "controllers")

# key -> (expected type, default)
OPTIONAL_KEYS: dict[str, tuple[type, Any]] = {
    "gain_Ks": (float, 0.946),
    "time_constant_T": (float, 0.4425),
    "dead_time_L": (float, 0.0325),
    "period_Ts": (float, DEFAULT_PERIOD_TS),
    "sub_step_h": (float, DEFAULT_SUB_STEP_H),
    "rpm_per_volt": (float, 200.0),
    "actuator_limits": (list, list(DEFAULT_ACTUATOR_LIMITS)),
    "output_dir": (str, "out"),
    "band_pct": (float, 2.0),
    "alt_band_pct": (float, 5.0),
    "dump_weights": (bool, False),
    "plot": (bool, True),
    "workers": (int, 1),
    "log_level": (str, "INFO"),
    "log_file": (str, None),
}

PID_ENTRY_KEYS = {"type", "name", "kp", "ki", "kd"}
PIDNN_ENTRY_KEYS = {
    "type", "name", "preset", "learning", "learning_rate",
    "hidden_learning_rate", "plant_sign", "jacobian",
}


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one CLI invocation."""

    scenario_ref: str
    scenario: Scenario
    controllers: tuple[ControllerSpec, ...]
    model: FopdtModel
    sensor: SensorGain
    period_Ts: float
    sub_step_h: float
    actuator_limits: tuple[float, float]
    output_dir: Path
    band_pct: float
    alt_band_pct: float
    dump_weights: bool
    plot: bool
    workers: int
    log_level: str
    log_file: str | None

    def summary(self) -> dict[str, Any]:
        """JSON-friendly view for the event log."""
        return {
            "scenario": self.scenario_ref,
            "controllers": [spec.name for spec in self.controllers],
            "gain_Ks": self.model.gain_Ks,
            "time_constant_T": self.model.time_constant_T,
            "dead_time_L": self.model.dead_time_L,
            "period_Ts": self.period_Ts,
            "sub_step_h": self.sub_step_h,
            "rpm_per_volt": self.sensor.rpm_per_volt,
            "actuator_limits": list(self.actuator_limits),
            "band_pct": self.band_pct,
            "alt_band_pct": self.alt_band_pct,
            "dump_weights": self.dump_weights,
        }


def load_config(
    config_path: Path,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Load configuration from a YAML file with optional overrides.

    Args:
        config_path: Path to the YAML configuration file.
        overrides: CLI values replacing the file's keys.

    Returns:
        Validated RunConfig.

    Raises:
        ConfigError: If the file is missing or has invalid or missing keys.
    """
    if not config_path.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")

    try:
        text = config_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ConfigError(f"Configuration file {config_path} is not UTF-8 text") from e
    return parse_config(text, base_dir=config_path.parent, overrides=overrides)


def parse_config(
    text: str,
    base_dir: Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Parse and validate configuration text.

    Args:
        text: YAML document.
        base_dir: Directory relative scenario paths are resolved against.
        overrides: CLI values replacing the document's keys.

    Raises:
        ConfigError: On syntax errors (with line number), unknown or
            missing keys, and values violating a field's invariant.
    """
    raw = _load_yaml(text)
    if overrides:
        raw = _apply_overrides(raw, overrides)
    return _validate_and_build(raw, base_dir)


def _load_yaml(text: str) -> dict:
    try:
        config = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark is not None else ""
        problem = getattr(e, "problem", None) or str(e)
        raise ConfigError(f"Invalid YAML{where}: {problem}") from e

    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ConfigError("Configuration must be a mapping of keys to values")
    return config


def _apply_overrides(config: dict, overrides: dict[str, Any]) -> dict:
    merged = config.copy()
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    return merged


def _validate_and_build(config: dict, base_dir: Path | None) -> RunConfig:
    unknown = sorted(set(config) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")

    missing = [key for key in REQUIRED_KEYS if key not in config]
    if missing:
        raise ConfigError(f"Missing required config keys: {', '.join(missing)}")

    values = {
        key: _typed(key, config.get(key, default), expected)
        for key, (expected, default) in OPTIONAL_KEYS.items()
    }

    scenario_ref = config["scenario"]
    if not isinstance(scenario_ref, str) or not scenario_ref:
        raise ConfigError("scenario must be a builtin name or a file path")

    model = FopdtModel(
        gain_Ks=values["gain_Ks"],
        time_constant_T=values["time_constant_T"],
        dead_time_L=values["dead_time_L"],
    )
    substeps_per_period(values["period_Ts"], values["sub_step_h"])
    delay_steps_for(model.dead_time_L, values["sub_step_h"])

    if values["workers"] < 1:
        raise ConfigError("workers must be >= 1")
    for key in ("band_pct", "alt_band_pct"):
        if values[key] <= 0:
            raise ConfigError(f"{key} must be > 0")

    limits = values["actuator_limits"]
    if len(limits) != 2 or not all(_is_number(v) for v in limits):
        raise ConfigError("actuator_limits must be [u_min, u_max]")

    return RunConfig(
        scenario_ref=scenario_ref,
        scenario=load_scenario(scenario_ref, base_dir),
        controllers=_parse_controllers(config["controllers"]),
        model=model,
        sensor=SensorGain(rpm_per_volt=values["rpm_per_volt"]),
        period_Ts=values["period_Ts"],
        sub_step_h=values["sub_step_h"],
        actuator_limits=validate_limits((float(limits[0]), float(limits[1]))),
        output_dir=Path(values["output_dir"]),
        band_pct=values["band_pct"],
        alt_band_pct=values["alt_band_pct"],
        dump_weights=values["dump_weights"],
        plot=values["plot"],
        workers=values["workers"],
        log_level=values["log_level"],
        log_file=values["log_file"],
    )


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _typed(key: str, value: Any, expected: type) -> Any:
    if value is None and OPTIONAL_KEYS[key][1] is None:
        return None
    if expected is float and _is_number(value):
        return float(value)
    if expected is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if expected in (str, bool, list) and isinstance(value, expected):
        return value
    raise ConfigError(
        f"Invalid type for {key}: expected {expected.__name__}, "
        f"got {type(value).__name__}"
    )


def _parse_controllers(raw: Any) -> tuple[ControllerSpec, ...]:
    entries = [raw] if isinstance(raw, (str, dict)) else raw
    if not isinstance(entries, list) or not entries:
        raise ConfigError("controllers must be a non-empty list")

    specs = tuple(_parse_controller(entry) for entry in entries)
    names = [spec.name for spec in specs]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ConfigError(f"Duplicate controller names: {', '.join(duplicates)}")
    return specs


def _parse_controller(entry: Any) -> ControllerSpec:
    if isinstance(entry, str):
        return builtin_controller(entry)
    if not isinstance(entry, dict):
        raise ConfigError(f"Invalid controller entry: {entry!r}")

    kind = entry.get("type")
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise ConfigError("controller entries need a non-empty name")

    if kind == "pid":
        _reject_unknown(entry, PID_ENTRY_KEYS, name)
        for key in ("kp", "ki", "kd"):
            if not _is_number(entry.get(key)):
                raise ConfigError(f"controller '{name}': {key} must be a number")
        return PidSpec(
            name=name,
            gains=PidGains(
                kp=float(entry["kp"]), ki=float(entry["ki"]), kd=float(entry["kd"])
            ),
        )

    if kind == "pidnn":
        _reject_unknown(entry, PIDNN_ENTRY_KEYS, name)
        preset = entry.get("preset", "default")
        get_preset(preset)
        return PidnnSpec(name=name, preset=preset, learn=_parse_learn(entry, preset, name))

    raise ConfigError(f"controller '{name}': type must be 'pid' or 'pidnn'")


def _reject_unknown(entry: dict, allowed: set[str], name: str) -> None:
    unknown = sorted(set(entry) - allowed)
    if unknown:
        raise ConfigError(f"controller '{name}': unknown keys: {', '.join(unknown)}")


def _parse_learn(entry: dict, preset: str, name: str) -> LearnConfig | None:
    learn_keys = PIDNN_ENTRY_KEYS - {"type", "name", "preset"}
    if not learn_keys & set(entry):
        return None

    learn = get_preset(preset).learn
    changes: dict[str, Any] = {}
    if "learning" in entry:
        if not isinstance(entry["learning"], bool):
            raise ConfigError(f"controller '{name}': learning must be true or false")
        changes["enabled"] = entry["learning"]
    for key, field_name in (
        ("learning_rate", "rate_eta"),
        ("hidden_learning_rate", "hidden_rate_eta"),
    ):
        if key in entry:
            if not _is_number(entry[key]):
                raise ConfigError(f"controller '{name}': {key} must be a number")
            changes[field_name] = float(entry[key])
    if "plant_sign" in entry:
        changes["plant_sign"] = entry["plant_sign"]
    if "jacobian" in entry:
        changes["jacobian"] = entry["jacobian"]
    return dataclasses.replace(learn, **changes)
