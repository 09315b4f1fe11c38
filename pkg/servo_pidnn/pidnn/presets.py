"""Named starting points for the PID neural network.

Every preset uses antisymmetric hidden rows (+g_j, -g_j), so each hidden
neuron sees g_j times the normalized error and the network starts out as a
discrete PID. `induced_pid_gains` gives that PID explicitly.
"""

from dataclasses import dataclass

import numpy as np

from servo_pidnn.controllers.base import DEFAULT_ACTUATOR_LIMITS
from servo_pidnn.controllers.pid import PidGains
from servo_pidnn.core.errors import ConfigError
from servo_pidnn.core.logging_setup import get_logger
from servo_pidnn.pidnn.network import (
    DEFAULT_W_MAX,
    LearnConfig,
    PidnnState,
    PidnnWeights,
)


logger = get_logger(__name__)


class UnknownPresetError(ConfigError):
    """Raised when a preset name is not registered."""

    pass


@dataclass(frozen=True)
class PidnnPreset:
    """Initial weights, scaling and learning settings under one name.

    Attributes:
        name: Registry key.
        row_gains: g_j of the hidden rows (+g_j, -g_j) for P, I, D.
        output_w: Output weights for P, I, D.
        norm_scale_r: Input normalization divisor in volts.
        norm_scale_u: Output denormalization multiplier in volts.
        learn: Learning settings the preset was validated with.
    """

    name: str
    row_gains: tuple[float, float, float]
    output_w: tuple[float, float, float]
    norm_scale_r: float
    norm_scale_u: float
    learn: LearnConfig


# With unit rows the integral neuron adds a full normalized error per
# sample, which induces ki = 150 /s at these scales and limit-cycles on the
# servo plant. The default preset keeps the output weights and scales but
# gives each hidden row its own gain (kp = 3.75, ki = 7.5 /s, kd = 0.0025 s).
PRESETS: dict[str, PidnnPreset] = {
    "default": PidnnPreset(
        name="default",
        row_gains=(2.5, 0.05, 0.5),
        output_w=(0.3, 0.3, 0.1),
        norm_scale_r=2.0,
        norm_scale_u=10.0,
        learn=LearnConfig(rate_eta=0.02, hidden_rate_eta=0.0),
    ),
    "unit-rows": PidnnPreset(
        name="unit-rows",
        row_gains=(1.0, 1.0, 1.0),
        output_w=(0.3, 0.3, 0.1),
        norm_scale_r=2.0,
        norm_scale_u=10.0,
        learn=LearnConfig(rate_eta=0.02),
    ),
}


def get_preset(name: str) -> PidnnPreset:
    """Look up a preset by name.

    Raises:
        UnknownPresetError: If no preset has that name.
    """
    if name not in PRESETS:
        raise UnknownPresetError(
            f"Unknown PIDNN preset '{name}'. "
            f"Available: {', '.join(sorted(PRESETS))}"
        )
    return PRESETS[name]


def pidnn_init(
    preset: str = "default",
    output_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS,
    w_max: float = DEFAULT_W_MAX,
) -> tuple[PidnnWeights, PidnnState]:
    """Build fresh weights and state from a named preset.

    Deterministic: two calls with the same arguments give equal results.

    Raises:
        UnknownPresetError: If the preset name is unknown.
    """
    chosen = get_preset(preset)
    gains = np.array(chosen.row_gains, dtype=float)

    weights = PidnnWeights(
        hidden_w=np.column_stack([gains, -gains]),
        output_w=np.array(chosen.output_w, dtype=float),
        w_max=w_max,
    )
    state = PidnnState(
        norm_scale_r=chosen.norm_scale_r,
        norm_scale_u=chosen.norm_scale_u,
        output_limits=output_limits,
    )

    logger.debug(
        f"Initialized PIDNN preset '{preset}': rows {chosen.row_gains}, "
        f"output {chosen.output_w}"
    )
    return weights, state


def induced_pid_gains(
    weights: PidnnWeights,
    state: PidnnState,
    period_Ts: float,
) -> PidGains:
    """PID gains realized by the network in its unsaturated regime.

    Raises:
        ValueError: If the hidden rows are not antisymmetric.
    """
    if not np.array_equal(weights.hidden_w[:, 0], -weights.hidden_w[:, 1]):
        raise ValueError("Induced PID gains need antisymmetric hidden rows")

    ratio = state.norm_scale_u / state.norm_scale_r
    row_gains = weights.hidden_w[:, 0]
    effective = ratio * weights.output_w * row_gains

    return PidGains(
        kp=float(effective[0]),
        ki=float(effective[1] / period_Ts),
        kd=float(effective[2] * period_Ts),
    )
