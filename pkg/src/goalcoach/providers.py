"""Calendar and email provider contracts plus in-memory implementations.

Live adapters (Google Calendar, SMTP, ...) are deployment plug-ins that
implement these same narrow surfaces. Calendar access is free/busy only;
event titles or attendees are never read back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime
from typing import Protocol

from .scheduler import BusyInterval


class CalendarProvider(Protocol):
    def free_busy(self, user_id: str, start: date, end: date) -> list[BusyInterval]: ...

    def create_event(
        self,
        user_id: str,
        goal_id: str,
        title: str,
        start: datetime,
        duration_minutes: int,
        description: str,
    ) -> str: ...

    def delete_goal_events(self, user_id: str, goal_id: str) -> int: ...

    def delete_user_events(self, user_id: str) -> int: ...


class EmailProvider(Protocol):
    def send(self, user_id: str, subject: str, body: str) -> None: ...


@dataclass(frozen=True)
class CalendarEvent:
    event_id: str
    goal_id: str
    title: str
    start: datetime
    duration_minutes: int
    description: str


@dataclass
class InMemoryCalendar:
    """Test/demo calendar; busy intervals are seeded by the test or demo setup."""

    busy: dict[str, list[BusyInterval]] = field(default_factory=dict)
    events: dict[str, list[CalendarEvent]] = field(default_factory=dict)
    _seq: int = 0

    def seed_busy(self, user_id: str, intervals: list[BusyInterval]) -> None:
        self.busy.setdefault(user_id, []).extend(intervals)

    def free_busy(self, user_id: str, start: date, end: date) -> list[BusyInterval]:
        return [
            interval
            for interval in self.busy.get(user_id, [])
            if interval.start.date() <= end and interval.end.date() >= start
        ]

    def create_event(
        self,
        user_id: str,
        goal_id: str,
        title: str,
        start: datetime,
        duration_minutes: int,
        description: str,
    ) -> str:
        self._seq += 1
        event = CalendarEvent(
            event_id=f"evt-{self._seq}",
            goal_id=goal_id,
            title=title,
            start=start,
            duration_minutes=duration_minutes,
            description=description,
        )
        self.events.setdefault(user_id, []).append(event)
        return event.event_id

    def delete_goal_events(self, user_id: str, goal_id: str) -> int:
        rows = self.events.get(user_id, [])
        kept = [event for event in rows if event.goal_id != goal_id]
        removed = len(rows) - len(kept)
        self.events[user_id] = kept
        return removed

    def delete_user_events(self, user_id: str) -> int:
        removed = len(self.events.pop(user_id, []))
        self.busy.pop(user_id, None)
        return removed


@dataclass(frozen=True)
class SentEmail:
    user_id: str
    subject: str
    body: str


@dataclass
class InMemoryEmail:
    outbox: list[SentEmail] = field(default_factory=list)

    def send(self, user_id: str, subject: str, body: str) -> None:
        self.outbox.append(SentEmail(user_id=user_id, subject=subject, body=body))
