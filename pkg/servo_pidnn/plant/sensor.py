"""Speed sensor scaling between sensor volts and RPM."""

import math
from dataclasses import dataclass

from servo_pidnn.core.errors import ConfigError


@dataclass(frozen=True)
class SensorGain:
    """Linear tachometer scaling; the CE110 reads 1 V per 200 RPM."""

    rpm_per_volt: float = 200.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.rpm_per_volt) or self.rpm_per_volt <= 0:
            raise ConfigError("rpm_per_volt must be > 0")


def volts_to_rpm(y: float, gain: SensorGain) -> float:
    """Convert a sensor voltage to shaft speed."""
    return y * gain.rpm_per_volt


def rpm_to_volts(r: float, gain: SensorGain) -> float:
    """Convert a shaft speed to the equivalent sensor voltage."""
    return r / gain.rpm_per_volt
