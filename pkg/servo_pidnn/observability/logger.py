"""Structured event log for simulation runs.

Events are appended as JSON lines and never rewritten.
"""

import json
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from servo_pidnn.metrics.step import StepMetrics
from servo_pidnn.observability.events import (
    ArtifactWrittenEvent,
    RunCompletedEvent,
    RunStartedEvent,
    SegmentMetricsEvent,
)


class EventLogger:
    """Appends run events to a JSON-lines file."""

    def __init__(self, log_file_path: Path) -> None:
        self._log_file = Path(log_file_path)
        self._log_file.parent.mkdir(parents=True, exist_ok=True)
        self._log_file.touch(exist_ok=True)

    @property
    def path(self) -> Path:
        return self._log_file

    def log_run_started(
        self,
        command: str,
        scenario: str,
        controllers: list[str],
        settings: dict[str, Any],
    ) -> None:
        self._append_event("RunStarted", RunStartedEvent(
            command=command,
            scenario=scenario,
            controllers=controllers,
            settings=settings,
            timestamp=self._timestamp(),
        ))

    def log_run_completed(self, scenario: str, controller: str, samples: int) -> None:
        self._append_event("RunCompleted", RunCompletedEvent(
            scenario=scenario,
            controller=controller,
            samples=samples,
            timestamp=self._timestamp(),
        ))

    def log_segment_metrics(
        self,
        controller: str,
        segment: int,
        kind: str,
        metrics: StepMetrics,
    ) -> None:
        self._append_event("SegmentMetrics", SegmentMetricsEvent(
            controller=controller,
            segment=segment,
            kind=kind,
            band_pct=metrics.band_pct,
            overshoot_pct=metrics.overshoot_pct,
            settling_time_s=metrics.settling_time,
            sse_rpm=metrics.steady_state_error,
            timestamp=self._timestamp(),
        ))

    def log_artifact_written(self, kind: str, path: Path) -> None:
        self._append_event("ArtifactWritten", ArtifactWrittenEvent(
            kind=kind,
            path=str(path),
            timestamp=self._timestamp(),
        ))

    def read_events(self) -> list[dict[str, Any]]:
        """All events logged so far, oldest first."""
        with self._log_file.open("r", encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]

    def _append_event(self, event_type: str, event: Any) -> None:
        entry = {"event_type": event_type, "data": asdict(event)}
        with self._log_file.open("a", encoding="utf-8") as f:
            f.write(json.dumps(entry) + "\n")

    def _timestamp(self) -> str:
        return datetime.now(timezone.utc).isoformat()
