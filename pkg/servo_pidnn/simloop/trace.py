"""Sampled closed-loop record of one run."""

from dataclasses import dataclass

import numpy as np


TRACE_COLUMNS = ("t_s", "setpoint_rpm", "speed_rpm", "control_v", "error_rpm")


@dataclass(frozen=True, eq=False)
class Trace:
    """Closed-loop signals sampled at the control period.

    Row k is taken at t = k * period_Ts. `weights`, when present, holds one
    weight snapshot per row with columns named by `weight_names`.
    """

    scenario: str
    controller: str
    period_Ts: float
    t: np.ndarray
    setpoint_rpm: np.ndarray
    speed_rpm: np.ndarray
    control_v: np.ndarray
    error_rpm: np.ndarray
    weights: np.ndarray | None = None
    weight_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.t)
        for name in TRACE_COLUMNS[1:]:
            if len(getattr(self, name)) != n:
                raise ValueError(
                    f"Trace column {name} has {len(getattr(self, name))} rows, "
                    f"expected {n}"
                )
        if self.weights is not None and self.weights.shape != (n, len(self.weight_names)):
            raise ValueError(
                f"Weight matrix shape {self.weights.shape} does not match "
                f"{n} rows x {len(self.weight_names)} names"
            )

    def __len__(self) -> int:
        return len(self.t)

    def columns(self) -> dict[str, np.ndarray]:
        """Trace columns keyed by their CSV header names."""
        return {
            "t_s": self.t,
            "setpoint_rpm": self.setpoint_rpm,
            "speed_rpm": self.speed_rpm,
            "control_v": self.control_v,
            "error_rpm": self.error_rpm,
        }

    def index_of(self, t: float) -> int:
        """Row index of time t on the sample grid."""
        return round(t / self.period_Ts)

    def same_signals(self, other: "Trace") -> bool:
        """True when both traces hold bit-identical signal columns."""
        return len(self) == len(other) and all(
            np.array_equal(mine, theirs)
            for mine, theirs in zip(self.columns().values(), other.columns().values())
        )
