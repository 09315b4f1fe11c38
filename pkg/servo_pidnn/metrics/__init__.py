"""Metrics module - step-response quality indices."""

from servo_pidnn.metrics.reference import (
    REFERENCE_FIGURES,
    ReferenceFigure,
    reference_for,
)
from servo_pidnn.metrics.step import (
    ALT_BAND_PCT,
    DEFAULT_BAND_PCT,
    MIN_SEGMENT_SAMPLES,
    MetricsError,
    StepMetrics,
    measurable_segments,
    metrics_for_segments,
    segment_metrics,
    segment_sample_count,
    segments_from_setpoint,
)

__all__ = [
    "ALT_BAND_PCT",
    "DEFAULT_BAND_PCT",
    "MIN_SEGMENT_SAMPLES",
    "REFERENCE_FIGURES",
    "MetricsError",
    "ReferenceFigure",
    "StepMetrics",
    "measurable_segments",
    "metrics_for_segments",
    "reference_for",
    "segment_metrics",
    "segment_sample_count",
    "segments_from_setpoint",
]
