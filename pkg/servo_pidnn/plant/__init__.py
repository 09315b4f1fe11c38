"""Plant module - FOPDT servo speed channel and sensor scaling."""

from servo_pidnn.plant.fopdt import (
    DEFAULT_SUB_STEP_H,
    FopdtModel,
    PlantState,
    delay_steps_for,
    plant_init,
    plant_reset,
    plant_step,
    simulate_open_loop,
    step_response,
)
from servo_pidnn.plant.sensor import SensorGain, rpm_to_volts, volts_to_rpm

__all__ = [
    "DEFAULT_SUB_STEP_H",
    "FopdtModel",
    "PlantState",
    "SensorGain",
    "delay_steps_for",
    "plant_init",
    "plant_reset",
    "plant_step",
    "rpm_to_volts",
    "simulate_open_loop",
    "step_response",
    "volts_to_rpm",
]
