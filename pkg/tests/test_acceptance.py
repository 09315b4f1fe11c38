"""End-to-end checks of closed-loop performance on the builtin scenarios."""

from dataclasses import replace

import numpy as np
import pytest

from servo_pidnn.metrics import segment_metrics
from servo_pidnn.simloop import (
    builtin_controller,
    loadchange,
    run_scenario,
    scenario_segments,
    staircase,
    step200,
)


def _run(scenario, controller: str):
    return run_scenario(replace(scenario, controller=builtin_controller(controller)))


def _segment_results(scenario, controller: str):
    trace = _run(scenario, controller)
    return [
        segment_metrics(trace, s.t_from, s.t_to, s.target_rpm, 2.0)
        for s in scenario_segments(scenario, trace.period_Ts)
    ]


@pytest.fixture(scope="module")
def kuhn_results():
    return {
        "step200": _segment_results(step200(), "pid-kuhn"),
        "staircase": _segment_results(staircase(), "pid-kuhn"),
        "loadchange": _segment_results(loadchange(), "pid-kuhn"),
    }


@pytest.fixture(scope="module")
def pidnn_results():
    return {
        "step200": _segment_results(step200(), "pidnn"),
        "staircase": _segment_results(staircase(), "pidnn"),
        "loadchange": _segment_results(loadchange(), "pidnn"),
    }


class TestKuhnBaseline:
    """Tests for the tuned fixed-gain PID."""

    def test_step200_settling(self, kuhn_results) -> None:
        """Test settling within 20% of 2.19 s at the 2% band."""
        metrics = kuhn_results["step200"][0]

        assert 1.752 <= metrics.settling_time <= 2.628
        assert abs(metrics.steady_state_error) < 0.5

    def test_step200_overshoot(self, kuhn_results) -> None:
        """Test a small but nonzero overshoot."""
        assert 1.0 < kuhn_results["step200"][0].overshoot_pct < 4.0


class TestPidnn:
    """Tests for the adaptive PIDNN controller."""

    @pytest.mark.parametrize("scenario", ["step200", "staircase", "loadchange"])
    def test_no_overshoot(self, pidnn_results, scenario: str) -> None:
        """Test overshoot of at most 1% on every segment."""
        assert all(m.overshoot_pct <= 1.0 for m in pidnn_results[scenario])

    @pytest.mark.parametrize("scenario", ["step200", "staircase", "loadchange"])
    def test_settles_faster_than_kuhn(
        self, pidnn_results, kuhn_results, scenario: str
    ) -> None:
        """Test a shorter settling time than PID-Kuhn on every segment."""
        for ours, baseline in zip(pidnn_results[scenario], kuhn_results[scenario]):
            assert ours.settled
            assert ours.settling_time < baseline.settling_time

    @pytest.mark.parametrize("scenario", ["step200", "staircase", "loadchange"])
    def test_small_steady_state_error(self, pidnn_results, scenario: str) -> None:
        """Test |SSE| below 0.5 RPM on every segment."""
        assert all(abs(m.steady_state_error) < 0.5 for m in pidnn_results[scenario])


class TestUnitPid:
    """Tests for the untuned unit-gain PID."""

    def test_stays_bounded(self) -> None:
        """Test that speed and control remain within physical limits."""
        trace = _run(staircase(), "pid-unit")

        assert np.all(np.isfinite(trace.speed_rpm))
        assert np.max(np.abs(trace.speed_rpm)) <= 1892.0 + 1e-6
        assert np.max(np.abs(trace.control_v)) <= 10.0


class TestLearning:
    """Tests for online adaptation over a full run."""

    def test_error_shrinks_over_run(self) -> None:
        """Test that the last second tracks at least as well as the first."""
        trace = _run(step200(), "pidnn")
        error = np.abs(trace.error_rpm)

        assert error[-100:].mean() <= error[:100].mean()

    def test_learning_changes_output_weights(self) -> None:
        """Test that the adaptive run ends with different output weights."""
        trace = run_scenario(
            replace(step200(duration=2.0), controller=builtin_controller("pidnn")),
            record_weights=True,
        )

        assert not np.array_equal(trace.weights[0, 6:], trace.weights[-1, 6:])
