"""Event schemas for simulation runs.

Each event is an immutable record appended to the run's JSON-lines log.
"""

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class RunStartedEvent:
    """A command started simulating."""

    command: str
    scenario: str
    controllers: list[str]
    settings: dict[str, Any]
    timestamp: str


@dataclass(frozen=True)
class RunCompletedEvent:
    """One controller finished a scenario."""

    scenario: str
    controller: str
    samples: int
    timestamp: str


@dataclass(frozen=True)
class SegmentMetricsEvent:
    """Quality indices of one segment of one run."""

    controller: str
    segment: int
    kind: str
    band_pct: float
    overshoot_pct: float
    settling_time_s: float | None
    sse_rpm: float
    timestamp: str


@dataclass(frozen=True)
class ArtifactWrittenEvent:
    """A trace, sidecar, table or plot was written."""

    kind: str
    path: str
    timestamp: str
