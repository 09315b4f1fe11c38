"""Observability module - trace files, plots, metric tables and run events."""

from servo_pidnn.observability.logger import EventLogger
from servo_pidnn.observability.plotting import plot_responses, plot_weights
from servo_pidnn.observability.report import (
    METRICS_COLUMNS,
    NOT_SETTLED,
    MetricsRow,
    format_table,
    write_metrics_csv,
)
from servo_pidnn.observability.trace_io import (
    TraceFormatError,
    format_number,
    read_trace,
    read_weights,
    weights_path_for,
    write_trace,
    write_weights,
)

__all__ = [
    "METRICS_COLUMNS",
    "NOT_SETTLED",
    "EventLogger",
    "MetricsRow",
    "TraceFormatError",
    "format_number",
    "format_table",
    "plot_responses",
    "plot_weights",
    "read_trace",
    "read_weights",
    "weights_path_for",
    "write_metrics_csv",
    "write_trace",
    "write_weights",
]
