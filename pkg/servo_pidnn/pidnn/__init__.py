"""PIDNN module - 3-3-1 PID neural network controller."""

from servo_pidnn.pidnn.controller import PidnnController
from servo_pidnn.pidnn.network import (
    DEFAULT_W_MAX,
    ForwardPass,
    LearnConfig,
    PidnnState,
    PidnnWeights,
    evaluate_network,
    pidnn_forward,
    pidnn_learn,
    reset_memories,
    weight_columns,
)
from servo_pidnn.pidnn.presets import (
    PRESETS,
    PidnnPreset,
    UnknownPresetError,
    get_preset,
    induced_pid_gains,
    pidnn_init,
)

__all__ = [
    "DEFAULT_W_MAX",
    "PRESETS",
    "ForwardPass",
    "LearnConfig",
    "PidnnController",
    "PidnnPreset",
    "PidnnState",
    "PidnnWeights",
    "UnknownPresetError",
    "evaluate_network",
    "get_preset",
    "induced_pid_gains",
    "pidnn_forward",
    "pidnn_init",
    "pidnn_learn",
    "reset_memories",
    "weight_columns",
]
