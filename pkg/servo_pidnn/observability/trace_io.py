"""Trace CSV reading and writing.

Numbers are written with 9 significant digits. Reading a written file and
writing it again reproduces it byte for byte.
"""

import csv
from collections.abc import Iterator
from pathlib import Path

import numpy as np

from servo_pidnn.simloop.trace import TRACE_COLUMNS, Trace


NUMBER_FORMAT = "{:.9g}"
WEIGHTS_SUFFIX = ".weights.csv"
# Allowed drift of t_s from k * period, relative to the period.
GRID_TOLERANCE = 1e-6


class TraceFormatError(Exception):
    """Raised when a trace file does not match the trace CSV layout."""

    pass


def format_number(value: float) -> str:
    return NUMBER_FORMAT.format(value)


def write_trace(trace: Trace, path: Path) -> Path:
    """Write the five trace columns to `path`, creating parent dirs."""
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = list(trace.columns().values())

    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for k in range(len(trace)):
            writer.writerow([format_number(column[k]) for column in columns])
    return path


def weights_path_for(trace_path: Path) -> Path:
    """Sidecar path: run.csv -> run.weights.csv."""
    return trace_path.with_name(trace_path.stem + WEIGHTS_SUFFIX)


def write_weights(trace: Trace, path: Path) -> Path | None:
    """Write the weight snapshots of an adaptive run, if any were recorded.

    Returns:
        The written path, or None when the trace holds no weights.
    """
    if trace.weights is None:
        return None

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(("t_s",) + trace.weight_names)
        for t, row in zip(trace.t, trace.weights):
            writer.writerow([format_number(t)] + [format_number(w) for w in row])
    return path


def read_trace(path: Path, scenario: str | None = None) -> Trace:
    """Load a trace CSV written by write_trace.

    The control period is taken from the first two time stamps.

    Raises:
        TraceFormatError: If the header differs from the trace layout, a
            row has the wrong number of fields, a cell is not a finite
            number, t_s is not a uniform grid from 0, the file is not
            UTF-8 text or there are fewer than two rows.
        OSError: If the file cannot be read.
    """
    header, rows = _read_table(path)
    _check_header(header, path)

    if len(rows) < 2:
        raise TraceFormatError(f"{path}: need at least 2 data rows, got {len(rows)}")

    data = np.array(rows)
    for column, name in enumerate(TRACE_COLUMNS):
        if not np.all(np.isfinite(data[:, column])):
            raise TraceFormatError(f"{path}: column {name} has non-finite values")

    t = data[:, 0]
    period = float(format_number(t[1] - t[0]))
    if period <= 0:
        raise TraceFormatError(f"{path}: column t_s must be increasing")
    grid = np.arange(len(t)) * period
    if np.max(np.abs(t - grid)) > GRID_TOLERANCE * max(period, 1.0):
        raise TraceFormatError(
            f"{path}: column t_s must be a uniform grid starting at 0 "
            f"with step {format_number(period)}"
        )

    return Trace(
        scenario=scenario or path.stem,
        controller=path.stem,
        period_Ts=period,
        t=t,
        setpoint_rpm=data[:, 1],
        speed_rpm=data[:, 2],
        control_v=data[:, 3],
        error_rpm=data[:, 4],
    )


def read_weights(path: Path) -> tuple[tuple[str, ...], np.ndarray]:
    """Load a weight sidecar as (column names, values without t_s)."""
    header, rows = _read_table(path)
    if not header or header[0] != "t_s":
        raise TraceFormatError(f"{path}: first column must be t_s")
    return tuple(header[1:]), np.array(rows)[:, 1:]


def _read_table(path: Path) -> tuple[list[str], list[list[float]]]:
    try:
        with path.open("r", newline="", encoding="utf-8") as f:
            return _parse_rows(csv.reader(f), path)
    except UnicodeDecodeError as e:
        raise TraceFormatError(f"{path}: not UTF-8 text ({e.reason})") from e
    except csv.Error as e:
        raise TraceFormatError(f"{path}: {e}") from e


def _parse_rows(
    reader: Iterator[list[str]],
    path: Path,
) -> tuple[list[str], list[list[float]]]:
    header = next(reader, None)
    if header is None:
        raise TraceFormatError(f"{path}: file is empty")

    rows = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise TraceFormatError(
                f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}"
            )
        values = []
        for name, cell in zip(header, row):
            try:
                values.append(float(cell))
            except ValueError:
                raise TraceFormatError(
                    f"{path}:{line_no}: column {name} is not a number: {cell!r}"
                ) from None
        rows.append(values)
    return header, rows


def _check_header(header: list[str], path: Path) -> None:
    if tuple(header) == TRACE_COLUMNS:
        return

    missing = [c for c in TRACE_COLUMNS if c not in header]
    unexpected = [c for c in header if c not in TRACE_COLUMNS]
    problems = []
    if missing:
        problems.append(f"missing columns: {', '.join(missing)}")
    if unexpected:
        problems.append(f"unexpected columns: {', '.join(unexpected)}")
    if not problems:
        problems.append(
            f"columns out of order: expected {','.join(TRACE_COLUMNS)}, "
            f"got {','.join(header)}"
        )
    raise TraceFormatError(f"{path}: " + "; ".join(problems))
