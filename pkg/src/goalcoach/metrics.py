"""Dashboard arithmetic: progress averages, consistency, dartboard geometry.

Integer percents round half away from zero, matching the goal-progress rule,
so 43.5 reads as 44 rather than the bankers' 43.
"""

from __future__ import annotations

from datetime import date, datetime
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict

from .domain import (
    BevsRecord,
    BevsStep,
    CommunicationStyle,
    Goal,
    GoalStatus,
    Phase,
)
from .resources import SupportResource


class NotReady(ValueError):
    code = "NotReady"


def overall_goal_progress(goals: Sequence[Goal]) -> tuple[int, int]:
    """Mean progress over active goals, with how many were averaged."""
    active = [goal.progress for goal in goals if goal.status is GoalStatus.ACTIVE]
    if not active:
        return 0, 0
    n = len(active)
    return (2 * sum(active) + n) // (2 * n), n


def checkin_consistency(
    checkin_timestamps: Iterable[datetime], today: date, window_days: int = 7
) -> int:
    """Percent of the trailing window's days that saw at least one check-in."""
    if window_days < 1:
        raise ValueError("window_days must be positive")
    days = {ts.date() for ts in checkin_timestamps}
    window = {date.fromordinal(today.toordinal() - offset) for offset in range(window_days)}
    hits = len(days & window)
    return (200 * hits + window_days) // (2 * window_days)


class DartboardEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    domain: str
    score: int
    radius: float


def dartboard_view(bevs: BevsRecord | None) -> list[DartboardEntry]:
    """One point per domain; score 7 sits nearest the bull's-eye."""
    if bevs is None or bevs.currentStep is not BevsStep.DONE:
        raise NotReady("values check-in not complete")
    return [
        DartboardEntry(
            domain=item.domain, score=item.score, radius=(8 - item.score) / 7
        )
        for item in bevs.assessments
    ]


class CheckinView(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    start: datetime
    link: str = ""
    fallback: bool = False


class GoalView(BaseModel):
    model_config = ConfigDict(frozen=True)

    goal_id: str
    description: str
    duration_days: int
    next_steps: tuple[str, ...]
    progress: int
    status: str
    scheduled_checkins: tuple[CheckinView, ...] = ()


class InsightsView(BaseModel):
    model_config = ConfigDict(frozen=True)

    themes: tuple[str, ...] = ()
    themes_stale: bool = False
    style: CommunicationStyle | None = None
    dartboard: tuple[DartboardEntry, ...] = ()


class DashboardPayload(BaseModel):
    model_config = ConfigDict(frozen=True)

    display_phase: str
    overall_progress: int
    consistency: int
    active_goal_count: int
    goals_view: tuple[GoalView, ...]
    insights: InsightsView
    resources: tuple[SupportResource, ...]


def phase_display(phase: Phase) -> str:
    return phase.display_label
