"""Check-in event placement against free/busy data, plus reminder cadence math.

Slot search is deterministic: earliest free 30-minute slot in the preferred
window on the target day, shifting forward up to two days, then falling back
to the window's opening slot on the original day (flagged, may conflict).
With a fully busy three-day span the flagged fallback can land before the
midpoint event; ordering is guaranteed only for unflagged events.
"""

from __future__ import annotations

from datetime import date, datetime, timedelta
from enum import Enum
from typing import Iterable, Iterator, Mapping

from pydantic import BaseModel, ConfigDict, model_validator

from .domain import Goal


class TimeWindow(str, Enum):
    MORNING = "morning"
    AFTERNOON = "afternoon"
    EVENING = "evening"
    NIGHT = "night"


# Minutes since local midnight; the four windows partition 08:00 to 24:00.
WINDOW_BOUNDS: dict[TimeWindow, tuple[int, int]] = {
    TimeWindow.MORNING: (8 * 60, 12 * 60),
    TimeWindow.AFTERNOON: (12 * 60, 17 * 60),
    TimeWindow.EVENING: (17 * 60, 21 * 60),
    TimeWindow.NIGHT: (21 * 60, 24 * 60),
}

SLOT_MINUTES = 30
MAX_DAY_SHIFT = 2


class BusyInterval(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: datetime
    end: datetime

    @model_validator(mode="after")
    def _ordered(self) -> "BusyInterval":
        if self.start >= self.end:
            raise ValueError("busy interval must have start < end")
        return self


class CheckinKind(str, Enum):
    MIDPOINT = "midpoint"
    END = "end"


class CheckinEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    goal_id: str
    kind: CheckinKind
    start: datetime
    duration_minutes: int = SLOT_MINUTES
    link: str = ""
    fallback: bool = False

    @property
    def end(self) -> datetime:
        return self.start + timedelta(minutes=self.duration_minutes)


def slot_starts(day: date, window: TimeWindow) -> Iterator[datetime]:
    open_min, close_min = WINDOW_BOUNDS[window]
    midnight = datetime(day.year, day.month, day.day)
    at = open_min
    while at + SLOT_MINUTES <= close_min:
        yield midnight + timedelta(minutes=at)
        at += SLOT_MINUTES


def _collides(slot_start: datetime, busy: Iterable[BusyInterval]) -> bool:
    slot_end = slot_start + timedelta(minutes=SLOT_MINUTES)
    # Strict intersection: touching endpoints leave the slot free.
    return any(slot_start < item.end and item.start < slot_end for item in busy)


def find_slot(
    day: date, window: TimeWindow, busy: Iterable[BusyInterval]
) -> tuple[datetime, bool]:
    """Earliest free slot with the documented shift-then-fallback policy."""
    busy = tuple(busy)
    for shift in range(MAX_DAY_SHIFT + 1):
        for start in slot_starts(day + timedelta(days=shift), window):
            if not _collides(start, busy):
                return start, False
    return next(slot_starts(day, window)), True


def schedule_goal_checkins(
    goal: Goal,
    window: TimeWindow,
    busy: Iterable[BusyInterval],
    link: str = "",
) -> list[CheckinEvent]:
    """Midpoint and end events for a goal; a 1-day goal gets the end event only."""
    busy = tuple(busy)
    start_day = goal.timeframe.start_date
    duration = goal.timeframe.duration_days
    end_day = start_day + timedelta(days=duration - 1)

    def event(kind: CheckinKind, day: date, extra: tuple[BusyInterval, ...]) -> CheckinEvent:
        start, fell_back = find_slot(day, window, busy + extra)
        return CheckinEvent(
            goal_id=goal.goal_id, kind=kind, start=start, link=link, fallback=fell_back
        )

    if duration < 2:
        return [event(CheckinKind.END, end_day, ())]

    midpoint_day = start_day + timedelta(days=duration // 2)
    midpoint = event(CheckinKind.MIDPOINT, midpoint_day, ())
    # The placed midpoint slot is busy time for the end event, so a 2-day
    # goal's events land in distinct slots.
    taken = BusyInterval(start=midpoint.start, end=midpoint.end)
    end = event(CheckinKind.END, end_day, (taken,))
    return [midpoint, end]


class ReminderFrequency(str, Enum):
    DAILY = "daily"
    BIWEEKLY = "biweekly"
    WEEKLY = "weekly"


# "Biweekly" reads as twice-weekly here: the cadence menu orders density as
# daily, then biweekly, then weekly.
REMINDER_PERIOD_DAYS: dict[ReminderFrequency, int] = {
    ReminderFrequency.DAILY: 1,
    ReminderFrequency.BIWEEKLY: 3,
    ReminderFrequency.WEEKLY: 7,
}


class ReminderSettings(BaseModel):
    frequency: ReminderFrequency = ReminderFrequency.WEEKLY
    enabled: bool = False
    last_sent: datetime | None = None


def next_reminder(settings: ReminderSettings, now: datetime) -> datetime | None:
    if not settings.enabled:
        return None
    period = timedelta(days=REMINDER_PERIOD_DAYS[settings.frequency])
    anchor = settings.last_sent if settings.last_sent is not None else now
    return anchor + period


def due_reminders(all_settings: Mapping[str, ReminderSettings], now: datetime) -> list[str]:
    """Users whose next reminder time has arrived; callers stamp last_sent on send."""
    due = []
    for user_id, settings in all_settings.items():
        moment = next_reminder(settings, now)
        if moment is not None and moment <= now:
            due.append(user_id)
    return sorted(due)
