"""Sample-synchronous controller contract.

Every controller is evaluated once per control period with the current
setpoint and measurement, both in sensor volts. The closed loop only talks
to controllers through this contract.
"""

import math
from dataclasses import dataclass
from typing import Protocol

from servo_pidnn.core.errors import ConfigError, SimulationError


DEFAULT_PERIOD_TS = 0.01
DEFAULT_ACTUATOR_LIMITS = (-10.0, 10.0)


@dataclass(frozen=True)
class ControllerIO:
    """Inputs seen by a controller at one sample instant.

    Attributes:
        setpoint: Reference in sensor volts.
        measurement: Sensor feedback in volts.
        period_Ts: Control period, constant over a run.
    """

    setpoint: float
    measurement: float
    period_Ts: float = DEFAULT_PERIOD_TS

    def __post_init__(self) -> None:
        if not math.isfinite(self.period_Ts) or self.period_Ts <= 0:
            raise ConfigError("period_Ts must be > 0")
        if not (math.isfinite(self.setpoint) and math.isfinite(self.measurement)):
            raise SimulationError(
                f"Non-finite controller input: setpoint={self.setpoint}, "
                f"measurement={self.measurement}"
            )

    @property
    def error(self) -> float:
        """Tracking error in volts."""
        return self.setpoint - self.measurement


def validate_limits(limits: tuple[float, float]) -> tuple[float, float]:
    """Check an actuator range and return it as floats.

    Raises:
        ConfigError: If the range is empty or not finite.
    """
    u_min, u_max = float(limits[0]), float(limits[1])
    if not (math.isfinite(u_min) and math.isfinite(u_max)) or u_min >= u_max:
        raise ConfigError(
            f"actuator_limits must satisfy u_min < u_max, got {limits}"
        )
    return u_min, u_max


def clamp(value: float, low: float, high: float) -> float:
    """Limit a value to [low, high]."""
    return min(max(value, low), high)


class Controller(Protocol):
    """What the closed loop needs from a controller."""

    @property
    def name(self) -> str:
        """Label used in traces, tables and plot legends."""
        ...

    def reset(self) -> None:
        """Return to the initial state of a fresh run."""
        ...

    def step(self, io: ControllerIO) -> float:
        """Compute the control voltage for this sample."""
        ...

    def weight_snapshot(self) -> dict[str, float] | None:
        """Adaptive parameters after this sample, or None if fixed."""
        ...
