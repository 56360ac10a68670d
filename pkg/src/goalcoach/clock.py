"""Injectable time source so the engine, scheduler, and tests agree on now.

All timestamps in the service are naive local times; deployments run in the
institution's single configured timezone.
"""

from __future__ import annotations

from datetime import date, datetime, timedelta


class Clock:
    def now(self) -> datetime:
        return datetime.now()

    def today(self) -> date:
        return self.now().date()


class FixedClock(Clock):
    """Deterministic clock for tests; advance it explicitly."""

    def __init__(self, start: datetime) -> None:
        self._now = start

    def now(self) -> datetime:
        return self._now

    def advance(self, delta: timedelta) -> None:
        self._now += delta

    def set(self, moment: datetime) -> None:
        self._now = moment
