"""Positional discrete PID used for both fixed-gain baselines.

u = kp e + ki (acc + e Ts) + kd (e - e_prev) / Ts, clamped to the actuator
range. The accumulator only integrates while the unclamped output is inside
the range (conditional-integration anti-windup). The derivative acts on the
error and is not filtered.
"""

import math
from dataclasses import dataclass

from servo_pidnn.controllers.base import (
    DEFAULT_ACTUATOR_LIMITS,
    ControllerIO,
    clamp,
    validate_limits,
)
from servo_pidnn.core.errors import ConfigError


@dataclass(frozen=True)
class PidGains:
    """Continuous-domain PID gains.

    Attributes:
        kp: Proportional gain (V/V).
        ki: Integral gain (1/s).
        kd: Derivative gain (s).
    """

    kp: float
    ki: float
    kd: float

    def __post_init__(self) -> None:
        for name in ("kp", "ki", "kd"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")


# Kuhn T-sum tuning of the identified plant, taken as given constants.
KUHN_GAINS = PidGains(kp=1.057, ki=3.125, kd=0.08016)
UNIT_GAINS = PidGains(kp=1.0, ki=1.0, kd=1.0)


@dataclass
class PidState:
    """Accumulator and previous error of one PID instance."""

    integral_acc: float = 0.0
    prev_error: float = 0.0
    output_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS

    def __post_init__(self) -> None:
        self.output_limits = validate_limits(self.output_limits)


def pid_step(state: PidState, gains: PidGains, io: ControllerIO) -> float:
    """Evaluate the PID law for one sample and update its state.

    Args:
        state: PID state, mutated in place.
        gains: Controller gains.
        io: Setpoint, measurement and period.

    Returns:
        Clamped control voltage.
    """
    e = io.error
    ts = io.period_Ts
    candidate_acc = state.integral_acc + e * ts

    u_raw = (
        gains.kp * e
        + gains.ki * candidate_acc
        + gains.kd * (e - state.prev_error) / ts
    )

    u_min, u_max = state.output_limits
    if u_min < u_raw < u_max:
        state.integral_acc = candidate_acc
    state.prev_error = e

    return clamp(u_raw, u_min, u_max)


def controller_reset(state: PidState) -> PidState:
    """Zero the accumulator and the error memory; limits are kept."""
    state.integral_acc = 0.0
    state.prev_error = 0.0
    return state


class PidController:
    """Adapter exposing a fixed-gain PID through the Controller contract."""

    def __init__(
        self,
        name: str,
        gains: PidGains,
        output_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS,
    ) -> None:
        self._name = name
        self._gains = gains
        self._state = PidState(output_limits=output_limits)

    @property
    def name(self) -> str:
        return self._name

    @property
    def gains(self) -> PidGains:
        return self._gains

    @property
    def state(self) -> PidState:
        return self._state

    def reset(self) -> None:
        controller_reset(self._state)

    def step(self, io: ControllerIO) -> float:
        return pid_step(self._state, self._gains, io)

    def weight_snapshot(self) -> dict[str, float] | None:
        return None
