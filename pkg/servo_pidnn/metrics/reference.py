"""Published step-response figures for the CE110 speed loop.

Shown beside measured values in comparison tables. The PIDNN settling
times are shorter than the plant dead time and cannot be reproduced by
any causal controller; they are listed as published.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class ReferenceFigure:
    overshoot_pct: float
    settling_time_s: float
    sse_rpm: float = 0.0


# controller family -> segment kind -> figure
REFERENCE_FIGURES: dict[str, dict[str, ReferenceFigure]] = {
    "pidnn": {
        "steady": ReferenceFigure(0.0, 0.03, 0.0),
        "accelerate": ReferenceFigure(0.0, 0.03, 0.0),
        "decelerate": ReferenceFigure(0.0, 0.02, 0.0),
    },
    "pid-kuhn": {
        "steady": ReferenceFigure(7.15, 2.19, 0.0),
        "accelerate": ReferenceFigure(6.8, 2.56, 0.0),
        "decelerate": ReferenceFigure(6.82, 1.97, 0.0),
    },
    "pid": {
        "steady": ReferenceFigure(0.0, 4.23, 0.0),
        "accelerate": ReferenceFigure(0.0, 4.78, 0.0),
        "decelerate": ReferenceFigure(0.0, 2.87, 0.0),
    },
}

_FAMILY_BY_CONTROLLER = {
    "pidnn": "pidnn",
    "pidnn-frozen": "pidnn",
    "pid-kuhn": "pid-kuhn",
    "pid-unit": "pid",
}


def reference_for(controller: str, kind: str) -> ReferenceFigure | None:
    """Published figure for a builtin controller and segment kind, if any."""
    family = _FAMILY_BY_CONTROLLER.get(controller)
    if family is None:
        return None
    return REFERENCE_FIGURES[family].get(kind)
