"""Metric tables: aligned text for the terminal and CSV for files."""

import csv
from dataclasses import dataclass
from pathlib import Path

from servo_pidnn.metrics.reference import reference_for
from servo_pidnn.metrics.step import StepMetrics
from servo_pidnn.observability.trace_io import format_number
from servo_pidnn.simloop.scenario import Segment


METRICS_COLUMNS = (
    "controller",
    "segment",
    "kind",
    "t_from_s",
    "t_to_s",
    "target_rpm",
    "band_pct",
    "overshoot_pct",
    "settling_time_s",
    "sse_rpm",
)
NOT_SETTLED = "DNS"


@dataclass(frozen=True)
class MetricsRow:
    """Metrics of one segment of one controller's run."""

    controller: str
    index: int
    segment: Segment
    metrics: StepMetrics


def write_metrics_csv(rows: list[MetricsRow], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(METRICS_COLUMNS)
        for row in rows:
            m = row.metrics
            writer.writerow([
                row.controller,
                row.index,
                row.segment.kind,
                format_number(row.segment.t_from),
                format_number(row.segment.t_to),
                format_number(row.segment.target_rpm),
                format_number(m.band_pct),
                format_number(m.overshoot_pct),
                NOT_SETTLED if m.settling_time is None else format_number(m.settling_time),
                format_number(m.steady_state_error),
            ])
    return path


def format_table(rows: list[MetricsRow], with_reference: bool = True) -> str:
    """Render rows as a fixed-width table.

    With `with_reference`, published figures for builtin controllers are
    shown in brackets after each measured value.
    """
    header = ["controller", "seg", "kind", "target", "band%",
              "overshoot%", "settling s", "sse rpm"]
    body = []
    for row in rows:
        m = row.metrics
        overshoot = f"{m.overshoot_pct:.2f}"
        settling = NOT_SETTLED if m.settling_time is None else f"{m.settling_time:.3f}"
        sse = f"{m.steady_state_error:.3f}"
        reference = reference_for(row.controller, row.segment.kind) if with_reference else None
        if reference is not None:
            overshoot += f" [{reference.overshoot_pct:g}]"
            settling += f" [{reference.settling_time_s:g}]"
            sse += f" [{reference.sse_rpm:g}]"
        body.append([
            row.controller,
            str(row.index),
            row.segment.kind,
            f"{row.segment.target_rpm:g}",
            f"{m.band_pct:g}",
            overshoot,
            settling,
            sse,
        ])

    widths = [
        max(len(line[col]) for line in [header] + body)
        for col in range(len(header))
    ]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in [header] + body
    ]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)
