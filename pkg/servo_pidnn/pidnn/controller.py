"""Controller adapter running the PID neural network in the closed loop."""

from servo_pidnn.controllers.base import ControllerIO
from servo_pidnn.pidnn.network import (
    LearnConfig,
    PidnnState,
    PidnnWeights,
    pidnn_forward,
    pidnn_learn,
    reset_memories,
)


class PidnnController:
    """Forward pass, then learning on the same sample's error.

    The initial weights are kept so that reset() restarts adaptation from
    the preset rather than from the adapted weights.
    """

    def __init__(
        self,
        name: str,
        weights: PidnnWeights,
        state: PidnnState,
        learn: LearnConfig,
    ) -> None:
        self._name = name
        self._initial_weights = weights.copy()
        self._weights = weights.copy()
        self._state = state
        self._learn = learn
        self._last_u = 0.0

    @property
    def name(self) -> str:
        return self._name

    @property
    def weights(self) -> PidnnWeights:
        return self._weights

    @property
    def state(self) -> PidnnState:
        return self._state

    @property
    def learn_config(self) -> LearnConfig:
        return self._learn

    def reset(self) -> None:
        self._weights = self._initial_weights.copy()
        reset_memories(self._state)
        self._last_u = 0.0

    def step(self, io: ControllerIO) -> float:
        u = pidnn_forward(self._state, self._weights, io.setpoint, io.measurement)
        self._weights = pidnn_learn(
            self._state,
            self._weights,
            self._learn,
            io.setpoint,
            io.measurement,
            self._last_u,
        )
        self._last_u = u
        return u

    def weight_snapshot(self) -> dict[str, float] | None:
        return self._weights.snapshot()
