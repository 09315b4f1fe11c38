"""Command-line interface for servo PIDNN simulations.

Argument parsing and delegation only; simulation, metrics and file formats
live in their own modules.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from servo_pidnn.core.config import ConfigError, RunConfig, load_config
from servo_pidnn.core.errors import SimulationError
from servo_pidnn.core.logging_setup import get_logger, setup_logging
from servo_pidnn.metrics.step import (
    ALT_BAND_PCT,
    DEFAULT_BAND_PCT,
    MetricsError,
    measurable_segments,
    metrics_for_segments,
    segments_from_setpoint,
)
from servo_pidnn.observability.logger import EventLogger
from servo_pidnn.observability.plotting import plot_responses, plot_weights
from servo_pidnn.observability.report import (
    MetricsRow,
    format_table,
    write_metrics_csv,
)
from servo_pidnn.observability.trace_io import (
    TraceFormatError,
    read_trace,
    read_weights,
    weights_path_for,
    write_trace,
    write_weights,
)
from servo_pidnn.simloop.engine import run_comparison
from servo_pidnn.simloop.scenario import (
    ControllerSpec,
    Segment,
    load_scenario,
    scenario_segments,
)
from servo_pidnn.simloop.trace import Trace


DEFAULT_CONFIG_PATH = Path("config/settings.yaml")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

logger = get_logger("cli")


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI.

    Returns:
        Exit code: 0 on success, 2 on configuration errors, 3 on runtime
        errors (simulation, metrics, trace format, file system).
    """
    parser = _create_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    commands = {"run": _cmd_run, "compare": _cmd_compare, "metrics": _cmd_metrics}
    try:
        return commands[args.command](args)
    except ConfigError as e:
        _report_failure("Configuration error", e)
        return EXIT_CONFIG
    except (SimulationError, MetricsError, TraceFormatError, OSError) as e:
        _report_failure("Error", e)
        return EXIT_RUNTIME


def _report_failure(label: str, error: Exception) -> None:
    print(f"{label}: {error}", file=sys.stderr)
    logger.debug(f"{label}: {error}", exc_info=True)


def _create_parser() -> argparse.ArgumentParser:
    """Create argument parser with subcommands."""
    parser = argparse.ArgumentParser(
        prog="servo-pidnn",
        description="PID neural network speed control of a DC servo, simulated",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=DEFAULT_CONFIG_PATH,
        help=f"Path to config file (default: {DEFAULT_CONFIG_PATH})",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    run_parser = subparsers.add_parser(
        "run", help="Simulate the first configured controller"
    )
    compare_parser = subparsers.add_parser(
        "compare", help="Simulate every configured controller and tabulate metrics"
    )
    for sub in (run_parser, compare_parser):
        sub.add_argument("--out", type=str, help="Output directory")
        sub.add_argument("--band", type=float, help="Settling band in percent")
        sub.add_argument(
            "--dump-weights",
            action="store_true",
            default=None,
            help="Write PIDNN weight trajectories next to the trace",
        )
        sub.add_argument(
            "--no-plot",
            dest="plot",
            action="store_false",
            default=None,
            help="Skip SVG output",
        )

    metrics_parser = subparsers.add_parser(
        "metrics", help="Recompute metrics from an existing trace CSV"
    )
    metrics_parser.add_argument("trace", type=Path, help="Trace CSV file")
    metrics_parser.add_argument(
        "--scenario", type=str, help="Builtin scenario or scenario file to segment by"
    )
    metrics_parser.add_argument("--from", dest="t_from", type=float, help="Segment start [s]")
    metrics_parser.add_argument("--to", dest="t_to", type=float, help="Segment end [s]")
    metrics_parser.add_argument("--target", type=float, help="Segment target [RPM]")
    metrics_parser.add_argument(
        "--band", type=float, default=DEFAULT_BAND_PCT,
        help=f"Settling band in percent (default: {DEFAULT_BAND_PCT})",
    )
    metrics_parser.add_argument("--out", type=str, help="Also write metrics.csv here")

    return parser


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "output_dir": args.out,
        "band_pct": args.band,
        "dump_weights": args.dump_weights,
        "plot": args.plot,
    }
    config = load_config(args.config, overrides)
    try:
        setup_logging(config.log_level, config.log_file)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    return config


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    return _simulate(config, list(config.controllers[:1]), command="run")


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    return _simulate(config, list(config.controllers), command="compare")


def _simulate(config: RunConfig, specs: list[ControllerSpec], command: str) -> int:
    out_dir = config.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    events = EventLogger(out_dir / "events.jsonl")
    scenario = config.scenario

    names = [spec.name for spec in specs]
    logger.info(f"{command}: scenario '{scenario.name}' with {', '.join(names)}")
    events.log_run_started(command, config.scenario_ref, names, config.summary())

    traces = run_comparison(
        scenario,
        specs,
        model=config.model,
        sensor=config.sensor,
        period_Ts=config.period_Ts,
        sub_step_h=config.sub_step_h,
        actuator_limits=config.actuator_limits,
        record_weights=config.dump_weights,
        workers=config.workers,
    )

    stored: list[Trace] = []
    for trace in traces:
        events.log_run_completed(trace.scenario, trace.controller, len(trace))
        csv_path = write_trace(trace, out_dir / f"{scenario.name}_{trace.controller}.csv")
        _artifact(events, "trace", csv_path)

        if config.dump_weights:
            sidecar = write_weights(trace, weights_path_for(csv_path))
            if sidecar is not None:
                _artifact(events, "weights", sidecar)
                if config.plot:
                    names, values = read_weights(sidecar)
                    stored_weights = replace(trace, weights=values, weight_names=names)
                    _artifact(events, "plot", plot_weights(
                        stored_weights,
                        csv_path.with_name(f"{csv_path.stem}.weights.svg"),
                    ))

        # Metrics come from the stored file so `metrics` reproduces them.
        stored.append(_reread(csv_path, scenario.name, trace.controller))

    if config.plot:
        suffix = "compare" if command == "compare" else stored[0].controller
        _artifact(events, "plot", plot_responses(
            stored, out_dir / f"{scenario.name}_{suffix}.svg"
        ))

    segments = _measurable(
        scenario_segments(scenario, config.period_Ts), config.period_Ts
    )
    rows = []
    for band in _bands(config.band_pct, config.alt_band_pct):
        for trace in stored:
            rows.extend(_segment_rows(trace, segments, band, events))

    table_path = write_metrics_csv(rows, out_dir / "metrics.csv")
    _artifact(events, "metrics", table_path)
    print(format_table(rows))
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    setup_logging("INFO")
    explicit = (args.t_from, args.t_to, args.target)
    if any(value is not None for value in explicit) and None in explicit:
        raise ConfigError("--from, --to and --target must be given together")

    trace = read_trace(args.trace)
    if args.t_from is not None:
        segments = [(0, Segment(args.t_from, args.t_to, args.target, "steady"))]
    elif args.scenario:
        scenario = load_scenario(args.scenario, Path.cwd())
        segments = _measurable(
            scenario_segments(scenario, trace.period_Ts), trace.period_Ts
        )
    else:
        segments = _measurable(segments_from_setpoint(trace), trace.period_Ts)

    if not segments:
        raise MetricsError(f"{args.trace}: no segments to evaluate")

    rows = []
    for band in _bands(args.band, ALT_BAND_PCT):
        rows.extend(_segment_rows(trace, segments, band))

    if args.out:
        write_metrics_csv(rows, Path(args.out) / "metrics.csv")
    print(format_table(rows, with_reference=False))
    return EXIT_OK


def _reread(path: Path, scenario: str, controller: str) -> Trace:
    return replace(read_trace(path, scenario=scenario), controller=controller)


def _bands(primary: float, alternate: float) -> list[float]:
    return [primary] if primary == alternate else [primary, alternate]


def _measurable(segments: list[Segment], period_Ts: float) -> list[tuple[int, Segment]]:
    measurable, too_short = measurable_segments(segments, period_Ts)
    for index, segment in too_short:
        logger.warning(
            f"Skipping segment {index} [{segment.t_from:g}, {segment.t_to:g}] s: "
            f"too short for metrics"
        )
    return measurable


def _segment_rows(
    trace: Trace,
    segments: list[tuple[int, Segment]],
    band_pct: float,
    events: EventLogger | None = None,
) -> list[MetricsRow]:
    rows = []
    results = metrics_for_segments(trace, [segment for _, segment in segments], band_pct)
    for (index, segment), metrics in zip(segments, results):
        rows.append(MetricsRow(trace.controller, index, segment, metrics))
        if events is not None:
            events.log_segment_metrics(trace.controller, index, segment.kind, metrics)
    return rows


def _artifact(events: EventLogger, kind: str, path: Path) -> None:
    logger.info(f"Wrote {kind}: {path}")
    events.log_artifact_written(kind, path)


if __name__ == "__main__":
    sys.exit(main())
