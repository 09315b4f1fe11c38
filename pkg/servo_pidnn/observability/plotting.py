"""Static SVG response plots."""

from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from servo_pidnn.simloop.trace import Trace


SVG_HASH_SALT = "servo-pidnn"


def plot_responses(traces: list[Trace], path: Path, title: str = "") -> Path:
    """Overlay the setpoint and each controller's speed over time.

    The setpoint is drawn once, from the first trace; all traces of a
    comparison share it.

    Raises:
        ValueError: If no traces are given.
    """
    if not traces:
        raise ValueError("Nothing to plot")

    fig = Figure(figsize=(8.0, 4.5))
    ax = fig.add_subplot()
    first = traces[0]
    ax.plot(first.t, first.setpoint_rpm, color="black", linestyle="--",
            linewidth=1.0, label="setpoint")
    for trace in traces:
        ax.plot(trace.t, trace.speed_rpm, linewidth=1.2, label=trace.controller)

    ax.set_xlabel("time [s]")
    ax.set_ylabel("speed [RPM]")
    ax.set_title(title or first.scenario)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right")
    return _save_svg(fig, path)


def plot_weights(trace: Trace, path: Path) -> Path | None:
    """Plot recorded weight trajectories; None when the trace has none."""
    if trace.weights is None:
        return None

    fig = Figure(figsize=(8.0, 4.5))
    ax = fig.add_subplot()
    for column, name in enumerate(trace.weight_names):
        ax.plot(trace.t, trace.weights[:, column], linewidth=1.0, label=name)

    ax.set_xlabel("time [s]")
    ax.set_ylabel("weight")
    ax.set_title(f"{trace.controller} weights")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right", ncol=3, fontsize="small")
    return _save_svg(fig, path)


def _save_svg(fig: Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    # Fixed salt and no date keep repeated runs byte-identical.
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return path
