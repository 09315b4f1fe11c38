"""Step-response quality indices over a window of a trace.

Overshoot is measured against the commanded target in the direction of
the step, settling time against a +/-band_pct% band around the target, and
steady-state error as the mean error over the final tenth of the window.
"""

import math
from dataclasses import dataclass

import numpy as np

from servo_pidnn.simloop.scenario import Segment
from servo_pidnn.simloop.trace import Trace


MIN_SEGMENT_SAMPLES = 10
DEFAULT_BAND_PCT = 2.0
ALT_BAND_PCT = 5.0


class MetricsError(ValueError):
    """Raised when a segment cannot be evaluated."""

    pass


@dataclass(frozen=True)
class StepMetrics:
    """Quality indices of one segment.

    Attributes:
        overshoot_pct: Peak excursion past the target, percent of |target|.
        settling_time: Seconds from t_from until the speed stays in band;
            None when the last sample of the segment is still out of band.
        steady_state_error: Mean of (target - speed) in RPM over the SSE
            window.
        band_pct: Settling band used.
    """

    overshoot_pct: float
    settling_time: float | None
    steady_state_error: float
    band_pct: float

    @property
    def settled(self) -> bool:
        return self.settling_time is not None


def segment_metrics(
    trace: Trace,
    t_from: float,
    t_to: float,
    target: float,
    band_pct: float = DEFAULT_BAND_PCT,
) -> StepMetrics:
    """Compute overshoot, settling time and steady-state error.

    The window holds every trace sample with t_from <= t <= t_to.

    Args:
        trace: Closed-loop record.
        t_from: Window start in seconds.
        t_to: Window end in seconds.
        target: Commanded speed in RPM.
        band_pct: Settling band in percent of |target|.

    Raises:
        MetricsError: If the window lies outside the trace, holds fewer
            than 10 samples, the target is zero or the band is not positive.
    """
    if target == 0 or not math.isfinite(target):
        raise MetricsError("target must be finite and nonzero")
    if not math.isfinite(band_pct) or band_pct <= 0:
        raise MetricsError("band_pct must be > 0")
    if not (math.isfinite(t_from) and math.isfinite(t_to)):
        raise MetricsError(f"Segment bounds must be finite, got [{t_from}, {t_to}]")

    lo = trace.index_of(t_from)
    hi = trace.index_of(t_to)
    if lo < 0 or hi >= len(trace) or hi < lo:
        raise MetricsError(
            f"Segment [{t_from}, {t_to}] is outside the trace "
            f"[0, {trace.t[-1] if len(trace) else 0}]"
        )
    n = hi - lo + 1
    if n < MIN_SEGMENT_SAMPLES:
        raise MetricsError(
            f"Segment [{t_from}, {t_to}] has {n} samples, "
            f"need at least {MIN_SEGMENT_SAMPLES}"
        )

    t = trace.t[lo:hi + 1]
    speed = trace.speed_rpm[lo:hi + 1]
    scale = abs(target)
    band = band_pct / 100.0 * scale
    out_of_band = np.abs(speed - target) > band

    direction = _step_direction(float(speed[0]), target, band)
    peak_excursion = float(np.max(direction * (speed - target)))
    overshoot = max(0.0, peak_excursion / scale * 100.0)

    outside = np.flatnonzero(out_of_band)
    if outside.size == 0:
        settling: float | None = 0.0
    elif outside[-1] == n - 1:
        settling = None
    else:
        settling = float(t[outside[-1] + 1] - t[0])

    window = max(1, n // 10)
    sse = float(np.mean(target - speed[-window:]))

    return StepMetrics(
        overshoot_pct=overshoot,
        settling_time=settling,
        steady_state_error=sse,
        band_pct=band_pct,
    )


def _step_direction(start: float, target: float, band: float) -> float:
    # Disturbance-rejection windows start in band; overshoot is then
    # measured on the far side of the target from zero.
    if abs(target - start) <= band:
        return math.copysign(1.0, target)
    return math.copysign(1.0, target - start)


def segment_sample_count(segment: Segment, period_Ts: float) -> int:
    """Number of grid samples inside [t_from, t_to]."""
    return round(segment.t_to / period_Ts) - round(segment.t_from / period_Ts) + 1


def measurable_segments(
    segments: list[Segment],
    period_Ts: float,
) -> tuple[list[tuple[int, Segment]], list[tuple[int, Segment]]]:
    """Split indexed segments into those long enough for metrics and the rest.

    Returns:
        (measurable, too_short), each as (segment index, segment) pairs.
    """
    measurable, too_short = [], []
    for index, segment in enumerate(segments):
        if segment_sample_count(segment, period_Ts) >= MIN_SEGMENT_SAMPLES:
            measurable.append((index, segment))
        else:
            too_short.append((index, segment))
    return measurable, too_short


def metrics_for_segments(
    trace: Trace,
    segments: list[Segment],
    band_pct: float = DEFAULT_BAND_PCT,
) -> list[StepMetrics]:
    """segment_metrics for each segment, in order."""
    return [
        segment_metrics(trace, s.t_from, s.t_to, s.target_rpm, band_pct)
        for s in segments
    ]


def segments_from_setpoint(trace: Trace) -> list[Segment]:
    """Split a trace wherever its setpoint column changes.

    Used when a trace is analysed without its scenario; load steps are not
    visible in the trace and therefore not split on.
    """
    if len(trace) == 0:
        return []

    setpoint = trace.setpoint_rpm
    starts = [0] + [int(i) + 1 for i in np.flatnonzero(np.diff(setpoint) != 0)]
    ends = [s - 1 for s in starts[1:]] + [len(trace) - 1]

    segments = []
    for position, (start, end) in enumerate(zip(starts, ends)):
        if position == 0:
            kind = "steady"
        elif setpoint[start] > setpoint[start - 1]:
            kind = "accelerate"
        else:
            kind = "decelerate"
        segments.append(Segment(
            t_from=float(trace.t[start]),
            t_to=float(trace.t[end]),
            target_rpm=float(setpoint[start]),
            kind=kind,
        ))
    return segments
