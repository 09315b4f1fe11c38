"""First-order-plus-dead-time model of the servo speed channel.

The plant is integrated on a fine sub-step h with the exact zero-order-hold
update of a first-order lag, followed by a FIFO delay line that realizes
the dead time exactly. The dead time must therefore be an integer multiple
of h; 0.0325 s at h = 0.5 ms is 65 sub-steps.
"""

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from servo_pidnn.core.errors import ConfigError, SimulationError


DEFAULT_SUB_STEP_H = 0.0005
DIVISIBILITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FopdtModel:
    """Continuous plant parameters Ks e^{-Ls} / (1 + Ts).

    Input is the motor voltage, output is the speed sensor voltage.
    Defaults are the identified CE110 speed channel.
    """

    gain_Ks: float = 0.946
    time_constant_T: float = 0.4425
    dead_time_L: float = 0.0325

    def __post_init__(self) -> None:
        if not math.isfinite(self.gain_Ks) or self.gain_Ks == 0:
            raise ConfigError("gain_Ks must be finite and nonzero")
        if not math.isfinite(self.time_constant_T) or self.time_constant_T <= 0:
            raise ConfigError("time_constant_T must be > 0")
        if not math.isfinite(self.dead_time_L) or self.dead_time_L < 0:
            raise ConfigError("dead_time_L must be >= 0")


@dataclass
class PlantState:
    """Discrete simulation state of one plant instance.

    Single-owner and mutated in place by plant_step.
    """

    sub_step_h: float
    decay: float
    lag_output: float = 0.0
    delay_buffer: deque[float] = field(default_factory=deque)

    @property
    def delay_steps(self) -> int:
        """Number of sub-steps in the dead-time delay line."""
        return self.delay_buffer.maxlen or 0


def delay_steps_for(dead_time_L: float, sub_step_h: float) -> int:
    """Number of sub-steps realizing the dead time.

    Raises:
        ConfigError: If sub_step_h is not positive or the dead time is not
            an integer multiple of it. The message names the nearest valid
            sub-step.
    """
    if not math.isfinite(sub_step_h) or sub_step_h <= 0:
        raise ConfigError("sub_step_h must be > 0")

    ratio = dead_time_L / sub_step_h
    steps = round(ratio)
    if abs(ratio - steps) > DIVISIBILITY_TOLERANCE * max(ratio, 1.0):
        nearest = dead_time_L / steps if steps > 0 else dead_time_L
        raise ConfigError(
            f"dead_time_L={dead_time_L} is not an integer multiple of "
            f"sub_step_h={sub_step_h}; nearest valid sub_step_h is {nearest:.6g}"
        )
    return steps


def plant_init(model: FopdtModel, sub_step_h: float) -> PlantState:
    """Create a plant at rest with its delay line filled with zeros.

    Args:
        model: Plant parameters.
        sub_step_h: Integration sub-step in seconds.

    Returns:
        Fresh plant state.

    Raises:
        ConfigError: If the dead time is not divisible by the sub-step.
    """
    steps = delay_steps_for(model.dead_time_L, sub_step_h)
    return PlantState(
        sub_step_h=sub_step_h,
        decay=math.exp(-sub_step_h / model.time_constant_T),
        lag_output=0.0,
        delay_buffer=deque([0.0] * steps, maxlen=steps),
    )


def plant_reset(state: PlantState) -> PlantState:
    """Return the plant to rest without reallocating the delay line."""
    state.lag_output = 0.0
    steps = state.delay_steps
    state.delay_buffer.clear()
    state.delay_buffer.extend([0.0] * steps)
    return state


def plant_step(
    state: PlantState,
    model: FopdtModel,
    u_volts: float,
    d_volts: float = 0.0,
) -> float:
    """Advance the plant by one sub-step.

    The load disturbance is additive at the plant input, so the response to
    (u, d) is by construction the response to (u + d, 0).

    Args:
        state: Plant state, mutated in place.
        model: Plant parameters.
        u_volts: Motor voltage held over the sub-step.
        d_volts: Load disturbance in input volts.

    Returns:
        Sensor voltage after the dead time.

    Raises:
        SimulationError: If u or d is not finite.
    """
    if not (math.isfinite(u_volts) and math.isfinite(d_volts)):
        raise SimulationError(
            f"Non-finite plant input: u={u_volts}, d={d_volts}"
        )

    a = state.decay
    state.lag_output = (
        a * state.lag_output + (1.0 - a) * model.gain_Ks * (u_volts + d_volts)
    )

    if state.delay_buffer.maxlen:
        delayed = state.delay_buffer.popleft()
        state.delay_buffer.append(state.lag_output)
        return delayed
    return state.lag_output


def simulate_open_loop(
    model: FopdtModel,
    inputs: np.ndarray,
    sub_step_h: float = DEFAULT_SUB_STEP_H,
    disturbances: np.ndarray | None = None,
) -> np.ndarray:
    """Run a plant from rest over a sequence of sub-step inputs.

    Args:
        model: Plant parameters.
        inputs: Motor voltage per sub-step.
        sub_step_h: Integration sub-step in seconds.
        disturbances: Optional load disturbance per sub-step.

    Returns:
        Output after each sub-step, same length as inputs.
    """
    u = np.asarray(inputs, dtype=float)
    d = (
        np.zeros_like(u) if disturbances is None
        else np.asarray(disturbances, dtype=float)
    )
    if d.shape != u.shape:
        raise ValueError("inputs and disturbances must have the same shape")

    state = plant_init(model, sub_step_h)
    outputs = np.empty_like(u)
    for n, (u_n, d_n) in enumerate(zip(u, d)):
        outputs[n] = plant_step(state, model, float(u_n), float(d_n))
    return outputs


def step_response(model: FopdtModel, t: np.ndarray) -> np.ndarray:
    """Closed-form unit-step response Ks (1 - e^{-(t-L)/T}) for t >= L."""
    t = np.asarray(t, dtype=float)
    shifted = np.maximum(t - model.dead_time_L, 0.0)
    return model.gain_Ks * (1.0 - np.exp(-shifted / model.time_constant_T))
