"""Fixed-step closed-loop simulation.

One control period is: sample the sensor, compute the control voltage,
then hold it over period_Ts / sub_step_h plant sub-steps. The first
sample is taken with the plant at rest.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from functools import partial

import numpy as np

from servo_pidnn.controllers.base import (
    DEFAULT_ACTUATOR_LIMITS,
    DEFAULT_PERIOD_TS,
    Controller,
    ControllerIO,
    validate_limits,
)
from servo_pidnn.controllers.pid import PidController
from servo_pidnn.core.errors import ConfigError
from servo_pidnn.core.logging_setup import get_logger
from servo_pidnn.pidnn.controller import PidnnController
from servo_pidnn.pidnn.network import weight_columns
from servo_pidnn.pidnn.presets import get_preset, pidnn_init
from servo_pidnn.plant.fopdt import (
    DEFAULT_SUB_STEP_H,
    DIVISIBILITY_TOLERANCE,
    FopdtModel,
    plant_init,
    plant_step,
)
from servo_pidnn.plant.sensor import SensorGain, rpm_to_volts, volts_to_rpm
from servo_pidnn.simloop.scenario import (
    ControllerSpec,
    PidnnSpec,
    PidSpec,
    Scenario,
    sample_profile,
)
from servo_pidnn.simloop.trace import Trace


logger = get_logger(__name__)


def substeps_per_period(period_Ts: float, sub_step_h: float) -> int:
    """Plant sub-steps per control period.

    Raises:
        ConfigError: If either step is not positive or period_Ts is not an
            integer multiple of sub_step_h.
    """
    if not math.isfinite(period_Ts) or period_Ts <= 0:
        raise ConfigError("period_Ts must be > 0")
    if not math.isfinite(sub_step_h) or sub_step_h <= 0:
        raise ConfigError("sub_step_h must be > 0")

    ratio = period_Ts / sub_step_h
    steps = round(ratio)
    if steps < 1 or abs(ratio - steps) > DIVISIBILITY_TOLERANCE * ratio:
        raise ConfigError(
            f"period_Ts={period_Ts} is not an integer multiple of "
            f"sub_step_h={sub_step_h}"
        )
    return steps


def sample_count(duration: float, period_Ts: float) -> int:
    """Rows of a trace covering [0, duration]: floor(duration / Ts) + 1."""
    return math.floor(duration / period_Ts + DIVISIBILITY_TOLERANCE) + 1


def build_controller(
    spec: ControllerSpec,
    actuator_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS,
) -> Controller:
    """Instantiate a fresh controller from its spec."""
    if isinstance(spec, PidSpec):
        return PidController(spec.name, spec.gains, output_limits=actuator_limits)
    if isinstance(spec, PidnnSpec):
        weights, state = pidnn_init(spec.preset, output_limits=actuator_limits)
        learn = spec.learn if spec.learn is not None else get_preset(spec.preset).learn
        return PidnnController(spec.name, weights, state, learn)
    raise ConfigError(f"Unsupported controller spec: {spec!r}")


def run_scenario(
    scenario: Scenario,
    model: FopdtModel = FopdtModel(),
    sensor: SensorGain = SensorGain(),
    period_Ts: float = DEFAULT_PERIOD_TS,
    sub_step_h: float = DEFAULT_SUB_STEP_H,
    actuator_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS,
    record_weights: bool = False,
) -> Trace:
    """Simulate one scenario with its bound controller.

    Deterministic: the same arguments always give bit-identical traces.

    Args:
        scenario: Experiment with a controller spec attached.
        model: Plant parameters.
        sensor: RPM/volt scaling.
        period_Ts: Control period in seconds.
        sub_step_h: Plant integration sub-step in seconds.
        actuator_limits: Control voltage range.
        record_weights: Keep a weight snapshot per sample for adaptive
            controllers.

    Returns:
        Trace with floor(duration / period_Ts) + 1 rows.

    Raises:
        ConfigError: On a missing controller or incompatible step sizes.
        SimulationError: If a non-finite signal appears.
    """
    if scenario.controller is None:
        raise ConfigError(f"Scenario '{scenario.name}' has no controller")

    limits = validate_limits(actuator_limits)
    n_sub = substeps_per_period(period_Ts, sub_step_h)
    n_samples = sample_count(scenario.duration, period_Ts)

    setpoints = sample_profile(scenario.setpoint_profile, n_samples, period_Ts)
    loads = sample_profile(
        scenario.disturbance_profile, n_samples * n_sub, sub_step_h
    )

    plant = plant_init(model, sub_step_h)
    controller = build_controller(scenario.controller, limits)
    controller.reset()

    logger.debug(
        f"Running '{scenario.name}' with '{controller.name}': "
        f"{n_samples} samples, {n_sub} sub-steps per sample"
    )

    speed = np.empty(n_samples)
    control = np.empty(n_samples)
    weight_rows: list[list[float]] = []
    names: tuple[str, ...] = ()

    y_volts = 0.0
    for k in range(n_samples):
        r_volts = rpm_to_volts(float(setpoints[k]), sensor)
        u = controller.step(ControllerIO(r_volts, y_volts, period_Ts))

        speed[k] = volts_to_rpm(y_volts, sensor)
        control[k] = u

        if record_weights:
            snapshot = controller.weight_snapshot()
            if snapshot is not None:
                names = tuple(weight_columns())
                weight_rows.append([snapshot[name] for name in names])

        base = k * n_sub
        for m in range(n_sub):
            y_volts = plant_step(plant, model, u, float(loads[base + m]))

    weights = np.array(weight_rows) if weight_rows else None
    return Trace(
        scenario=scenario.name,
        controller=controller.name,
        period_Ts=period_Ts,
        t=np.arange(n_samples) * period_Ts,
        setpoint_rpm=setpoints,
        speed_rpm=speed,
        control_v=control,
        error_rpm=setpoints - speed,
        weights=weights,
        weight_names=names if weights is not None else (),
    )


def run_comparison(
    scenario: Scenario,
    specs: list[ControllerSpec],
    model: FopdtModel = FopdtModel(),
    sensor: SensorGain = SensorGain(),
    period_Ts: float = DEFAULT_PERIOD_TS,
    sub_step_h: float = DEFAULT_SUB_STEP_H,
    actuator_limits: tuple[float, float] = DEFAULT_ACTUATOR_LIMITS,
    record_weights: bool = False,
    workers: int = 1,
) -> list[Trace]:
    """Run the same scenario once per controller, each from rest.

    Runs are independent, so with workers > 1 they execute in separate
    processes. Output order always matches `specs`.
    """
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    if not specs:
        return []

    jobs = [replace(scenario, controller=spec) for spec in specs]
    run = partial(
        run_scenario,
        model=model,
        sensor=sensor,
        period_Ts=period_Ts,
        sub_step_h=sub_step_h,
        actuator_limits=actuator_limits,
        record_weights=record_weights,
    )

    if workers == 1 or len(jobs) == 1:
        return [run(job) for job in jobs]

    logger.debug(f"Fanning {len(jobs)} runs out over {workers} workers")
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(run, jobs))
