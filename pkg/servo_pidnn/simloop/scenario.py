"""Declarative experiment descriptions.

A scenario is a duration plus piecewise-constant setpoint (RPM) and load
disturbance (input volts) profiles, optionally bound to a controller spec.
Profiles are evaluated on integer sample indices, never on accumulated
float time.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np
import yaml

from servo_pidnn.controllers.pid import KUHN_GAINS, UNIT_GAINS, PidGains
from servo_pidnn.core.errors import ConfigError
from servo_pidnn.pidnn.network import LearnConfig


@dataclass(frozen=True)
class ProfileStep:
    """Profile value that holds from t_start until the next step."""

    t_start: float
    value: float


@dataclass(frozen=True)
class PidSpec:
    """Fixed-gain positional PID."""

    name: str
    gains: PidGains


@dataclass(frozen=True)
class PidnnSpec:
    """PID neural network from a preset; learn=None uses the preset's own."""

    name: str
    preset: str = "default"
    learn: LearnConfig | None = None


ControllerSpec = PidSpec | PidnnSpec


BUILTIN_CONTROLLERS: dict[str, ControllerSpec] = {
    "pidnn": PidnnSpec(name="pidnn"),
    "pidnn-frozen": PidnnSpec(
        name="pidnn-frozen", learn=LearnConfig(enabled=False)
    ),
    "pid-kuhn": PidSpec(name="pid-kuhn", gains=KUHN_GAINS),
    "pid-unit": PidSpec(name="pid-unit", gains=UNIT_GAINS),
}


def builtin_controller(name: str) -> ControllerSpec:
    """Look up a builtin controller spec by name.

    Raises:
        ConfigError: If the name is unknown.
    """
    if name not in BUILTIN_CONTROLLERS:
        raise ConfigError(
            f"Unknown controller '{name}'. "
            f"Builtin controllers: {', '.join(BUILTIN_CONTROLLERS)}"
        )
    return BUILTIN_CONTROLLERS[name]


@dataclass(frozen=True)
class Scenario:
    """One closed-loop experiment.

    Attributes:
        name: Label used for output files.
        duration: Run length in seconds.
        setpoint_profile: Speed reference steps in RPM.
        disturbance_profile: Load steps in plant-input volts.
        controller: Controller to run; run_comparison fills this per run.
    """

    name: str
    duration: float
    setpoint_profile: tuple[ProfileStep, ...]
    disturbance_profile: tuple[ProfileStep, ...] = field(
        default=(ProfileStep(0.0, 0.0),)
    )
    controller: ControllerSpec | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigError("Scenario name cannot be empty")
        if not math.isfinite(self.duration) or self.duration <= 0:
            raise ConfigError("duration must be > 0")
        object.__setattr__(
            self, "setpoint_profile",
            _validate_profile("setpoint", self.setpoint_profile),
        )
        object.__setattr__(
            self, "disturbance_profile",
            _validate_profile("disturbance", self.disturbance_profile),
        )


def _validate_profile(
    label: str,
    steps: tuple[ProfileStep, ...] | list[ProfileStep],
) -> tuple[ProfileStep, ...]:
    """Check a profile starts at t = 0 and is strictly increasing."""
    steps = tuple(steps)
    if not steps:
        raise ConfigError(f"{label} profile cannot be empty")
    if steps[0].t_start != 0:
        raise ConfigError(f"{label} profile must start at t = 0")
    for step in steps:
        if not (math.isfinite(step.t_start) and math.isfinite(step.value)):
            raise ConfigError(f"{label} profile values must be finite")
    for earlier, later in zip(steps, steps[1:]):
        if later.t_start <= earlier.t_start:
            raise ConfigError(
                f"{label} profile must be sorted by strictly increasing t_start"
            )
    return steps


def sample_profile(
    steps: tuple[ProfileStep, ...],
    n_samples: int,
    step_s: float,
) -> np.ndarray:
    """Evaluate a profile at indices 0..n_samples-1 of a grid with spacing
    step_s. A step starting at t_start takes effect at index
    round(t_start / step_s)."""
    values = np.empty(n_samples, dtype=float)
    for step in steps:
        start = min(round(step.t_start / step_s), n_samples)
        values[start:] = step.value
    return values


def step200(duration: float = 20.0, speed_rpm: float = 200.0) -> Scenario:
    """Constant speed reference from rest."""
    return Scenario(
        name="step200",
        duration=duration,
        setpoint_profile=(ProfileStep(0.0, speed_rpm),),
    )


def staircase(
    levels_rpm: tuple[float, ...] = (200.0, 300.0, 150.0),
    times_s: tuple[float, ...] = (0.0, 8.0, 14.0),
    duration: float = 20.0,
) -> Scenario:
    """Time-varying reference: accelerate, then decelerate."""
    if len(levels_rpm) != len(times_s):
        raise ConfigError("staircase levels and times must have equal length")
    return Scenario(
        name="staircase",
        duration=duration,
        setpoint_profile=tuple(
            ProfileStep(t, level) for t, level in zip(times_s, levels_rpm)
        ),
    )


def loadchange(
    speed_rpm: float = 200.0,
    load_volts: float = -0.3,
    load_time_s: float = 10.0,
    duration: float = 20.0,
) -> Scenario:
    """Constant reference with a load step mid-run."""
    return Scenario(
        name="loadchange",
        duration=duration,
        setpoint_profile=(ProfileStep(0.0, speed_rpm),),
        disturbance_profile=(
            ProfileStep(0.0, 0.0),
            ProfileStep(load_time_s, load_volts),
        ),
    )


BUILTIN_SCENARIOS: dict[str, Callable[[], Scenario]] = {
    "step200": step200,
    "staircase": staircase,
    "loadchange": loadchange,
}


def load_scenario(ref: str, base_dir: Path | None = None) -> Scenario:
    """Resolve a builtin scenario name or a YAML scenario file.

    Args:
        ref: Builtin name or path (relative paths resolve against base_dir).
        base_dir: Directory of the referencing config file.

    Raises:
        ConfigError: If the file is missing or malformed.
    """
    if ref in BUILTIN_SCENARIOS:
        return BUILTIN_SCENARIOS[ref]()

    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    if not path.exists():
        raise ConfigError(
            f"Scenario '{ref}' is neither builtin "
            f"({', '.join(BUILTIN_SCENARIOS)}) nor an existing file"
        )

    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except UnicodeDecodeError as e:
        raise ConfigError(f"Scenario file {path} is not UTF-8 text") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in scenario file {path}: {e}") from e

    return parse_scenario(data, source=str(path))


def parse_scenario(data: Any, source: str = "<scenario>") -> Scenario:
    """Build a scenario from its YAML mapping.

    Expected keys: name, duration, setpoint (list of [t_start, rpm]) and
    optionally disturbance (list of [t_start, volts]).
    """
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: scenario must be a mapping")

    allowed = {"name", "duration", "setpoint", "disturbance"}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"{source}: unknown scenario keys: {', '.join(unknown)}")
    missing = sorted({"name", "duration", "setpoint"} - set(data))
    if missing:
        raise ConfigError(
            f"{source}: missing scenario keys: {', '.join(missing)}"
        )

    disturbance = data.get("disturbance") or [[0.0, 0.0]]
    return Scenario(
        name=str(data["name"]),
        duration=_as_float(data["duration"], "duration", source),
        setpoint_profile=_parse_steps(data["setpoint"], "setpoint", source),
        disturbance_profile=_parse_steps(disturbance, "disturbance", source),
    )


def _parse_steps(raw: Any, label: str, source: str) -> tuple[ProfileStep, ...]:
    if not isinstance(raw, list):
        raise ConfigError(f"{source}: {label} must be a list of [t_start, value]")
    steps = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ConfigError(
                f"{source}: {label} entries must be [t_start, value], got {item!r}"
            )
        steps.append(ProfileStep(
            t_start=_as_float(item[0], f"{label}.t_start", source),
            value=_as_float(item[1], f"{label}.value", source),
        ))
    return tuple(steps)


def _as_float(value: Any, label: str, source: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{source}: {label} must be a number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class Segment:
    """Window of a run with a constant target.

    kind is "steady" for the first segment, "accelerate" or "decelerate"
    after a setpoint change, and "load" after a disturbance-only change.
    """

    t_from: float
    t_to: float
    target_rpm: float
    kind: str


def scenario_segments(scenario: Scenario, period_Ts: float) -> list[Segment]:
    """Split a scenario at every setpoint or disturbance change.

    Each control sample belongs to exactly one segment.
    """
    last_index = math.floor(scenario.duration / period_Ts + 1e-9)
    n_samples = last_index + 1
    setpoints = sample_profile(scenario.setpoint_profile, n_samples, period_Ts)

    starts = {0}
    for step in scenario.setpoint_profile + scenario.disturbance_profile:
        index = round(step.t_start / period_Ts)
        if index <= last_index:
            starts.add(index)
    bounds = sorted(starts)

    segments = []
    for position, start in enumerate(bounds):
        end = bounds[position + 1] - 1 if position + 1 < len(bounds) else last_index
        target = float(setpoints[start])
        if position == 0:
            kind = "steady"
        elif target > setpoints[start - 1]:
            kind = "accelerate"
        elif target < setpoints[start - 1]:
            kind = "decelerate"
        else:
            kind = "load"
        segments.append(Segment(
            t_from=start * period_Ts,
            t_to=end * period_Ts,
            target_rpm=target,
            kind=kind,
        ))
    return segments
