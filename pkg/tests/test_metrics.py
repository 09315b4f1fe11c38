"""Tests for step-response metrics."""

import math

import numpy as np
import pytest

from servo_pidnn.metrics import (
    REFERENCE_FIGURES,
    MetricsError,
    measurable_segments,
    metrics_for_segments,
    reference_for,
    segment_metrics,
    segment_sample_count,
    segments_from_setpoint,
)
from servo_pidnn.observability import MetricsRow, format_table
from servo_pidnn.simloop import Segment, Trace


TS = 0.01
T_LAG = 0.4425


def _trace(speed: np.ndarray, setpoint: np.ndarray | float = 200.0) -> Trace:
    speed = np.asarray(speed, dtype=float)
    n = len(speed)
    setpoint = np.broadcast_to(np.asarray(setpoint, dtype=float), (n,)).copy()
    return Trace(
        scenario="synthetic",
        controller="test",
        period_Ts=TS,
        t=np.arange(n) * TS,
        setpoint_rpm=setpoint,
        speed_rpm=speed,
        control_v=np.zeros(n),
        error_rpm=setpoint - speed,
    )


def _first_order(n: int = 1001, scale: float = 200.0) -> np.ndarray:
    return scale * (1.0 - np.exp(-np.arange(n) * TS / T_LAG))


class TestSegmentMetrics:
    """Tests for segment_metrics."""

    def test_first_order_settling_time(self) -> None:
        """Test settling = T ln 50 within one sample at the 2% band."""
        metrics = segment_metrics(_trace(_first_order()), 0.0, 10.0, 200.0, 2.0)

        assert metrics.settling_time == pytest.approx(T_LAG * math.log(50), abs=TS)
        assert metrics.overshoot_pct == 0.0
        assert metrics.settled

    def test_constant_on_target(self) -> None:
        """Test that a trace sitting on target has all-zero metrics."""
        metrics = segment_metrics(_trace(np.full(500, 200.0)), 0.0, 4.99, 200.0)

        assert metrics.overshoot_pct == 0.0
        assert metrics.settling_time == 0.0
        assert metrics.steady_state_error == 0.0

    def test_overshoot_from_peak(self) -> None:
        """Test that a 214.3 RPM peak on a 200 RPM target is 7.15%."""
        speed = np.full(300, 200.0)
        speed[:50] = np.linspace(0.0, 214.3, 50)
        speed[50:100] = np.linspace(214.3, 200.0, 50)

        metrics = segment_metrics(_trace(speed), 0.0, 2.99, 200.0)

        assert metrics.overshoot_pct == pytest.approx(7.15, abs=1e-9)
        assert metrics.steady_state_error == pytest.approx(0.0, abs=1e-9)

    def test_downward_step_overshoot(self) -> None:
        """Test that a decelerating step measures the undershoot."""
        speed = np.full(300, 150.0)
        speed[:40] = np.linspace(300.0, 141.0, 40)
        speed[40:80] = np.linspace(141.0, 150.0, 40)

        metrics = segment_metrics(_trace(speed, 150.0), 0.0, 2.99, 150.0)

        assert metrics.overshoot_pct == pytest.approx(6.0, abs=1e-9)

    def test_steady_state_error_window(self) -> None:
        """Test that SSE is the mean error over the final tenth."""
        speed = np.full(100, 200.0)
        speed[90:] = 199.0

        metrics = segment_metrics(_trace(speed), 0.0, 0.99, 200.0, band_pct=5.0)

        assert metrics.steady_state_error == pytest.approx(1.0, abs=1e-9)

    def test_did_not_settle(self) -> None:
        """Test that a response still outside the band is flagged."""
        metrics = segment_metrics(_trace(np.linspace(0.0, 150.0, 200)), 0.0, 1.99, 200.0)

        assert metrics.settling_time is None
        assert not metrics.settled

    def test_scale_invariance(self) -> None:
        """Test that scaling speed and target by 2 only scales SSE."""
        speed = _first_order() + 3.0 * np.sin(np.arange(1001) * 0.05)
        base = segment_metrics(_trace(speed), 0.0, 10.0, 200.0)
        scaled = segment_metrics(_trace(2.0 * speed, 400.0), 0.0, 10.0, 400.0)

        assert scaled.overshoot_pct == pytest.approx(base.overshoot_pct, abs=1e-9)
        assert scaled.settling_time == base.settling_time
        assert scaled.steady_state_error == pytest.approx(2.0 * base.steady_state_error)

    def test_monotone_in_band(self) -> None:
        """Test that a wider band never gives a longer settling time."""
        trace = _trace(_first_order())
        times = [
            segment_metrics(trace, 0.0, 10.0, 200.0, band).settling_time
            for band in (1.0, 2.0, 5.0, 10.0)
        ]

        assert times == sorted(times, reverse=True)

    def test_segment_offset(self) -> None:
        """Test that settling is measured from t_from."""
        speed = np.concatenate([np.full(300, 100.0), _first_order(701)])
        trace = _trace(speed)

        metrics = segment_metrics(trace, 3.0, 10.0, 200.0)

        assert metrics.settling_time == pytest.approx(T_LAG * math.log(50), abs=TS)

    def test_too_short_segment(self) -> None:
        """Test that fewer than 10 samples is an error."""
        with pytest.raises(MetricsError, match="need at least 10"):
            segment_metrics(_trace(np.full(100, 200.0)), 0.0, 0.05, 200.0)

    def test_zero_target(self) -> None:
        """Test that a zero target is an error."""
        with pytest.raises(MetricsError, match="nonzero"):
            segment_metrics(_trace(np.zeros(100)), 0.0, 0.99, 0.0)

    def test_non_finite_bounds(self) -> None:
        """Test that NaN segment bounds are a MetricsError."""
        with pytest.raises(MetricsError, match="bounds must be finite"):
            segment_metrics(_trace(np.full(100, 200.0)), float("nan"), 0.99, 200.0)

    def test_outside_trace(self) -> None:
        """Test that a window past the end is an error."""
        with pytest.raises(MetricsError, match="outside the trace"):
            segment_metrics(_trace(np.full(100, 200.0)), 0.0, 5.0, 200.0)


class TestSegmentHelpers:
    """Tests for segment helpers and reference figures."""

    def test_segments_from_setpoint(self) -> None:
        """Test splitting a trace at setpoint changes."""
        setpoint = np.concatenate([np.full(100, 200.0), np.full(100, 300.0),
                                   np.full(100, 150.0)])
        segments = segments_from_setpoint(_trace(setpoint, setpoint))

        assert [s.kind for s in segments] == ["steady", "accelerate", "decelerate"]
        assert segments[1].t_from == pytest.approx(1.0)
        assert segments[1].t_to == pytest.approx(1.99)

    def test_metrics_for_segments(self) -> None:
        """Test one result per segment, in order."""
        trace = _trace(np.full(300, 200.0))
        segments = [Segment(0.0, 1.49, 200.0, "steady"), Segment(1.5, 2.99, 200.0, "load")]

        results = metrics_for_segments(trace, segments)

        assert len(results) == 2
        assert all(m.settling_time == 0.0 for m in results)

    def test_segment_sample_count(self) -> None:
        """Test that both end samples are counted."""
        assert segment_sample_count(Segment(0.0, 0.09, 200.0, "steady"), TS) == 10
        assert segment_sample_count(Segment(2.95, 3.0, 150.0, "accelerate"), TS) == 6

    def test_measurable_segments_keep_indices(self) -> None:
        """Test that short segments are split off with their original index."""
        segments = [
            Segment(0.0, 2.94, 100.0, "steady"),
            Segment(2.95, 3.0, 150.0, "accelerate"),
        ]

        measurable, too_short = measurable_segments(segments, TS)

        assert measurable == [(0, segments[0])]
        assert too_short == [(1, segments[1])]

    def test_reference_figures(self) -> None:
        """Test the published PID-Kuhn figures."""
        figure = reference_for("pid-kuhn", "steady")

        assert (figure.overshoot_pct, figure.settling_time_s) == (7.15, 2.19)
        assert reference_for("custom", "steady") is None

    def test_reference_steady_state_error_is_zero(self) -> None:
        """Test that every published figure has a zero steady-state error."""
        assert reference_for("pid-kuhn", "accelerate").sse_rpm == 0.0
        assert all(
            figure.sse_rpm == 0.0
            for family in REFERENCE_FIGURES.values()
            for figure in family.values()
        )

    def test_table_shows_reference_error(self) -> None:
        """Test that the published error appears in brackets."""
        segment = Segment(0.0, 1.0, 200.0, "decelerate")
        metrics = segment_metrics(_trace(np.full(101, 200.0)), 0.0, 1.0, 200.0)

        table = format_table([MetricsRow("pidnn", 0, segment, metrics)])

        assert "0.000 [0]" in table
