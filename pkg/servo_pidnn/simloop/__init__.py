"""Simloop module - scenarios, traces and the closed-loop engine."""

from servo_pidnn.simloop.engine import (
    build_controller,
    run_comparison,
    run_scenario,
    sample_count,
    substeps_per_period,
)
from servo_pidnn.simloop.scenario import (
    BUILTIN_CONTROLLERS,
    BUILTIN_SCENARIOS,
    ControllerSpec,
    PidnnSpec,
    PidSpec,
    ProfileStep,
    Scenario,
    Segment,
    builtin_controller,
    load_scenario,
    loadchange,
    parse_scenario,
    sample_profile,
    scenario_segments,
    staircase,
    step200,
)
from servo_pidnn.simloop.trace import TRACE_COLUMNS, Trace

__all__ = [
    "BUILTIN_CONTROLLERS",
    "BUILTIN_SCENARIOS",
    "TRACE_COLUMNS",
    "ControllerSpec",
    "PidnnSpec",
    "PidSpec",
    "ProfileStep",
    "Scenario",
    "Segment",
    "Trace",
    "build_controller",
    "builtin_controller",
    "load_scenario",
    "loadchange",
    "parse_scenario",
    "run_comparison",
    "run_scenario",
    "sample_count",
    "sample_profile",
    "scenario_segments",
    "staircase",
    "step200",
    "substeps_per_period",
]
