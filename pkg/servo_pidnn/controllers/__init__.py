"""Controllers module - controller contract and positional PID baselines."""

from servo_pidnn.controllers.base import (
    DEFAULT_ACTUATOR_LIMITS,
    DEFAULT_PERIOD_TS,
    Controller,
    ControllerIO,
    clamp,
    validate_limits,
)
from servo_pidnn.controllers.pid import (
    KUHN_GAINS,
    UNIT_GAINS,
    PidController,
    PidGains,
    PidState,
    controller_reset,
    pid_step,
)

__all__ = [
    "DEFAULT_ACTUATOR_LIMITS",
    "DEFAULT_PERIOD_TS",
    "KUHN_GAINS",
    "UNIT_GAINS",
    "Controller",
    "ControllerIO",
    "PidController",
    "PidGains",
    "PidState",
    "clamp",
    "controller_reset",
    "pid_step",
    "validate_limits",
]
