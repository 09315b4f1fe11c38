"""3-3-1 PID neural network: forward pass and online weight adaptation.

Input layer carries the normalized setpoint and feedback. The hidden layer
has one proportional, one integral and one derivative neuron, each
saturating at +/-1:

    P: X_H1 = clamp(u_H1)
    I: X_H2 = clamp(X_H2(k-1) + u_H2)     accumulates its own output
    D: X_H3 = clamp(u_H3 - u_H3(k-1))

The output neuron is linear in the saturated hidden outputs, and its value
is scaled back to volts and clamped to the actuator range.

Learning is one gradient step per sample on E = 1/2 e_n^2 with the plant
Jacobian replaced by the sign of the plant gain.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from servo_pidnn.controllers.base import (
    DEFAULT_ACTUATOR_LIMITS,
    clamp,
    validate_limits,
)
from servo_pidnn.core.errors import ConfigError, SimulationError


DEFAULT_W_MAX = 10.0
HIDDEN_NEURONS = ("P", "I", "D")
JACOBIAN_MODES = ("plant_sign", "difference")


@dataclass
class PidnnWeights:
    """Network weights.

    Attributes:
        hidden_w: 3x2 matrix; row j feeds hidden neuron j (P, I, D), column
            0 weighs the setpoint input, column 1 the feedback input.
        output_w: Weights from the P, I and D neurons to the output.
        w_max: Magnitude bound applied after every update.
    """

    hidden_w: np.ndarray
    output_w: np.ndarray
    w_max: float = DEFAULT_W_MAX

    def __post_init__(self) -> None:
        self.hidden_w = np.array(self.hidden_w, dtype=float)
        self.output_w = np.array(self.output_w, dtype=float)

        if self.hidden_w.shape != (3, 2):
            raise ConfigError(
                f"hidden_w must have shape (3, 2), got {self.hidden_w.shape}"
            )
        if self.output_w.shape != (3,):
            raise ConfigError(
                f"output_w must have shape (3,), got {self.output_w.shape}"
            )
        if not math.isfinite(self.w_max) or self.w_max <= 0:
            raise ConfigError("w_max must be > 0")
        for label, values in (("hidden_w", self.hidden_w), ("output_w", self.output_w)):
            if not np.all(np.isfinite(values)):
                raise ConfigError(f"{label} must be finite")
            if np.any(np.abs(values) > self.w_max):
                raise ConfigError(f"{label} magnitudes must be <= w_max={self.w_max}")

    def copy(self) -> "PidnnWeights":
        """Deep copy, so adapters can restore the initial weights."""
        return PidnnWeights(
            hidden_w=self.hidden_w.copy(),
            output_w=self.output_w.copy(),
            w_max=self.w_max,
        )

    def snapshot(self) -> dict[str, float]:
        """Flat view keyed w_h_{j}{i} (j = neuron 1..3, i = input 1..2)
        and w_o_{i} (i = neuron 1..3)."""
        values: dict[str, float] = {}
        for j in range(3):
            for i in range(2):
                values[f"w_h_{j + 1}{i + 1}"] = float(self.hidden_w[j, i])
        for i in range(3):
            values[f"w_o_{i + 1}"] = float(self.output_w[i])
        return values


def weight_columns() -> list[str]:
    """Column names of PidnnWeights.snapshot, in a stable order."""
    hidden = [f"w_h_{j}{i}" for j in range(1, 4) for i in range(1, 3)]
    return hidden + [f"w_o_{i}" for i in range(1, 4)]


@dataclass(frozen=True)
class ForwardPass:
    """Intermediate signals of one forward pass, kept for learning.

    `activation` holds each hidden neuron's value before the +/-1 clamp.
    """

    x_input: np.ndarray
    u_hidden: np.ndarray
    activation: np.ndarray
    x_hidden: np.ndarray
    u_norm: float
    u: float

    @property
    def saturated(self) -> np.ndarray:
        """Per hidden neuron, whether its net input or its clamp is past +/-1."""
        return (np.abs(self.activation) > 1.0) | (np.abs(self.u_hidden) > 1.0)


@dataclass
class PidnnState:
    """Neuron memories and signal scaling of one network instance.

    Attributes:
        norm_scale_r: Divisor mapping sensor volts into network units.
        norm_scale_u: Multiplier mapping the network output to volts.
        output_limits: Actuator range in volts.
        prev_xh2: Integral neuron output of the previous sample.
        prev_uh3: Derivative neuron net input of the previous sample.
        prev_inputs: Normalized (setpoint, feedback) of the last forward pass.
        prev_feedback: Normalized feedback seen by the previous learning step.
        prev_control: Control voltage passed to the previous learning step.
        last_pass: Intermediates of the most recent forward pass.
    """

    norm_scale_r: float = 2.0
    norm_scale_u: float = 10.0
    output_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS
    prev_xh2: float = 0.0
    prev_uh3: float = 0.0
    prev_inputs: np.ndarray = field(default_factory=lambda: np.zeros(2))
    prev_feedback: float | None = None
    prev_control: float | None = None
    last_pass: ForwardPass | None = None

    def __post_init__(self) -> None:
        for name in ("norm_scale_r", "norm_scale_u"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{name} must be > 0")
        self.output_limits = validate_limits(self.output_limits)


def reset_memories(state: PidnnState) -> PidnnState:
    """Clear neuron memories and learning history; scaling is kept."""
    state.prev_xh2 = 0.0
    state.prev_uh3 = 0.0
    state.prev_inputs = np.zeros(2)
    state.prev_feedback = None
    state.prev_control = None
    state.last_pass = None
    return state


@dataclass(frozen=True)
class LearnConfig:
    """Online adaptation settings.

    Attributes:
        rate_eta: Learning rate in normalized units.
        plant_sign: Sign of the plant DC gain, +1 or -1.
        enabled: When False, weights are never updated.
        hidden_rate_eta: Separate rate for the hidden layer; None means
            rate_eta, 0 freezes the hidden layer.
        jacobian: "plant_sign" uses plant_sign as dy/du; "difference" uses
            sign(dy * du) of the last two samples and falls back to
            plant_sign when that product is zero.
    """

    rate_eta: float = 0.02
    plant_sign: int = 1
    enabled: bool = True
    hidden_rate_eta: float | None = None
    jacobian: str = "plant_sign"

    def __post_init__(self) -> None:
        if not math.isfinite(self.rate_eta) or self.rate_eta < 0:
            raise ConfigError("rate_eta must be >= 0")
        if self.plant_sign not in (1, -1):
            raise ConfigError("plant_sign must be +1 or -1")
        if self.hidden_rate_eta is not None and (
            not math.isfinite(self.hidden_rate_eta) or self.hidden_rate_eta < 0
        ):
            raise ConfigError("hidden_rate_eta must be >= 0")
        if self.jacobian not in JACOBIAN_MODES:
            raise ConfigError(
                f"jacobian must be one of {', '.join(JACOBIAN_MODES)}, "
                f"got '{self.jacobian}'"
            )

    @property
    def hidden_rate(self) -> float:
        """Effective hidden-layer learning rate."""
        return self.rate_eta if self.hidden_rate_eta is None else self.hidden_rate_eta


def evaluate_network(
    state: PidnnState,
    weights: PidnnWeights,
    r_volts: float,
    y_volts: float,
) -> ForwardPass:
    """Compute a forward pass without committing the neuron memories.

    Args:
        state: Network state; read only.
        weights: Network weights.
        r_volts: Setpoint in sensor volts.
        y_volts: Feedback in sensor volts.

    Returns:
        All intermediate signals and the clamped control voltage.

    Raises:
        SimulationError: If r or y is not finite.
    """
    if not (math.isfinite(r_volts) and math.isfinite(y_volts)):
        raise SimulationError(
            f"Non-finite network input: r={r_volts}, y={y_volts}"
        )

    x_input = np.array([r_volts, y_volts]) / state.norm_scale_r
    # Column-wise so antisymmetric rows cancel exactly when r = y.
    u_hidden = weights.hidden_w[:, 0] * x_input[0] + weights.hidden_w[:, 1] * x_input[1]

    activation = np.array([
        u_hidden[0],
        state.prev_xh2 + u_hidden[1],
        u_hidden[2] - state.prev_uh3,
    ])
    x_hidden = np.clip(activation, -1.0, 1.0)

    u_norm = float(weights.output_w @ x_hidden)
    u_min, u_max = state.output_limits
    u = clamp(u_norm * state.norm_scale_u, u_min, u_max)

    return ForwardPass(
        x_input=x_input,
        u_hidden=u_hidden,
        activation=activation,
        x_hidden=x_hidden,
        u_norm=u_norm,
        u=u,
    )


def pidnn_forward(
    state: PidnnState,
    weights: PidnnWeights,
    r_volts: float,
    y_volts: float,
) -> float:
    """Run the network for one sample and commit its memories.

    Returns:
        Control voltage, clamped to the actuator range.
    """
    forward = evaluate_network(state, weights, r_volts, y_volts)

    state.prev_xh2 = float(forward.x_hidden[1])
    state.prev_uh3 = float(forward.u_hidden[2])
    state.prev_inputs = forward.x_input
    state.last_pass = forward

    return forward.u


def pidnn_learn(
    state: PidnnState,
    weights: PidnnWeights,
    cfg: LearnConfig,
    r_volts: float,
    y_volts: float,
    u_prev: float,
) -> PidnnWeights:
    """One online gradient step after this sample's forward pass.

    Output weights move by eta * delta * X_Hi with delta = e_n * dy/du.
    Hidden row j moves by eta_h * delta * w_j * X_1i, and not at all while
    neuron j is saturated. All weights are clamped to +/-w_max.

    Args:
        state: Network state holding this sample's forward pass.
        weights: Current weights; not modified.
        cfg: Learning settings.
        r_volts: Setpoint of this sample in sensor volts.
        y_volts: Feedback of this sample in sensor volts.
        u_prev: Control voltage held over the previous period.

    Returns:
        Updated weights (the same object when learning is disabled).

    Raises:
        SimulationError: If no forward pass has been run.
    """
    if not cfg.enabled:
        return weights

    forward = state.last_pass
    if forward is None:
        raise SimulationError("pidnn_learn requires a preceding pidnn_forward")

    e_norm = (r_volts - y_volts) / state.norm_scale_r
    y_norm = y_volts / state.norm_scale_r
    delta = e_norm * _jacobian_sign(state, cfg, y_norm, u_prev)

    state.prev_feedback = y_norm
    state.prev_control = u_prev

    output_w = weights.output_w + cfg.rate_eta * delta * forward.x_hidden

    gate = np.where(forward.saturated, 0.0, 1.0)
    row_scale = cfg.hidden_rate * delta * weights.output_w * gate
    hidden_w = weights.hidden_w + np.outer(row_scale, state.prev_inputs)

    return PidnnWeights(
        hidden_w=np.clip(hidden_w, -weights.w_max, weights.w_max),
        output_w=np.clip(output_w, -weights.w_max, weights.w_max),
        w_max=weights.w_max,
    )


def _jacobian_sign(
    state: PidnnState,
    cfg: LearnConfig,
    y_norm: float,
    u_prev: float,
) -> float:
    """Sign surrogate for dy/du."""
    if cfg.jacobian == "plant_sign":
        return float(cfg.plant_sign)

    if state.prev_feedback is None or state.prev_control is None:
        return float(cfg.plant_sign)

    product = (y_norm - state.prev_feedback) * (u_prev - state.prev_control)
    if product == 0.0:
        return float(cfg.plant_sign)
    return math.copysign(1.0, product)
