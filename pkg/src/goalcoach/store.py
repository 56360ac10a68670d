"""Profile store: phase-scoped writes, scrubbed transcripts, settings, events.

Storage keys carry only the opaque user_id. Display names live in process
memory for scrubbing and prompt personalization; they are absent from every
dump, save file, and write log by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field
from datetime import date, datetime, timedelta
from pathlib import Path
from typing import Any, Iterator

from pydantic import BaseModel, ConfigDict

from .clock import Clock
from .domain import Phase, UserProfile
from .patches import ApplyResult, ToolCallPatch, apply_patch
from .scheduler import CheckinEvent, ReminderSettings, TimeWindow
from .scrub import contains_pii, scrub_text


class UserNotFound(KeyError):
    code = "UserNotFound"


class StorageUnavailable(RuntimeError):
    """Backing storage failed; the caller may retry the write."""


class StoredTurn(BaseModel):
    model_config = ConfigDict(frozen=True)

    turn_id: int
    speaker: str  # "user" or "coach"
    text: str
    timestamp: datetime
    phase: Phase


class CoachPersona(BaseModel):
    name: str = "Coach"
    avatar: str = "default"
    gender: str | None = None


class UserSettings(BaseModel):
    reminder: ReminderSettings = ReminderSettings()
    window: TimeWindow = TimeWindow.MORNING
    persona: CoachPersona = CoachPersona()
    calendar_connected: bool = False


class ThemeState(BaseModel):
    themes: list[str] = []
    computed_on: date | None = None
    stale: bool = False


@dataclass
class _UserRecord:
    profile: UserProfile
    transcript: list[StoredTurn] = dataclass_field(default_factory=list)
    write_log: list[dict[str, Any]] = dataclass_field(default_factory=list)
    settings: UserSettings = dataclass_field(default_factory=UserSettings)
    events: list[CheckinEvent] = dataclass_field(default_factory=list)
    theme_state: ThemeState = dataclass_field(default_factory=ThemeState)
    goal_seq: int = 0
    turn_seq: int = 0


def _json_safe(value: Any) -> Any:
    return json.loads(json.dumps(value, default=_json_default))


def _json_default(value: Any) -> str:
    if isinstance(value, (datetime, date)):
        return value.isoformat()
    raise TypeError(f"not JSON-serializable: {type(value)!r}")


def _scrub_strings(value: Any, name: str | None) -> Any:
    if isinstance(value, str):
        return scrub_text(value, name)
    if isinstance(value, list):
        return [_scrub_strings(item, name) for item in value]
    return value


def _scrub_sections(sections: dict[str, Any], name: str | None) -> dict[str, Any]:
    """Scrub the free-text fields of a patch; structured fields stay intact.

    The demographic name is deliberately left alone: it is the value that
    becomes the scrub target, and it never reaches persisted storage.
    """
    cleaned = dict(sections)
    demographic = cleaned.get("demographic")
    if isinstance(demographic, dict):
        demographic = dict(demographic)
        for key in ("college_year", "major"):
            if isinstance(demographic.get(key), str):
                demographic[key] = scrub_text(demographic[key], name)
        cleaned["demographic"] = demographic
    bevs = cleaned.get("bevs")
    if isinstance(bevs, dict) and isinstance(bevs.get("assessments"), list):
        bevs = dict(bevs)
        bevs["assessments"] = [
            (
                {**item, "value_statement": scrub_text(item["value_statement"], name)}
                if isinstance(item, dict) and isinstance(item.get("value_statement"), str)
                else item
            )
            for item in bevs["assessments"]
        ]
        cleaned["bevs"] = bevs
    goals = cleaned.get("mental_health_goals")
    if isinstance(goals, list):
        scrubbed_goals = []
        for goal in goals:
            if isinstance(goal, dict):
                goal = dict(goal)
                for key in ("description", "steps", "obstacles"):
                    if key in goal:
                        goal[key] = _scrub_strings(goal[key], name)
            scrubbed_goals.append(goal)
        cleaned["mental_health_goals"] = scrubbed_goals
    return cleaned


def _drop_transient_name(sections: dict[str, Any]) -> dict[str, Any]:
    """The persisted write log must not carry the display name either."""
    demographic = sections.get("demographic")
    if not isinstance(demographic, dict) or "name" not in demographic:
        return sections
    cleaned = dict(sections)
    cleaned["demographic"] = {k: v for k, v in demographic.items() if k != "name"}
    return cleaned


class ProfileStore:
    """In-memory store with JSON save/load; writes per user are synchronous."""

    def __init__(self, clock: Clock | None = None) -> None:
        self._clock = clock or Clock()
        self._records: dict[str, _UserRecord] = {}
        # Session-scoped, never serialized.
        self._display_names: dict[str, str] = {}

    @property
    def clock(self) -> Clock:
        return self._clock

    def user_ids(self) -> list[str]:
        return sorted(self._records)

    def user_exists(self, user_id: str) -> bool:
        return user_id in self._records

    def ensure_user(self, user_id: str) -> UserProfile:
        if user_id not in self._records:
            self._records[user_id] = _UserRecord(profile=UserProfile(user_id=user_id))
        return self._records[user_id].profile

    def _require(self, user_id: str) -> _UserRecord:
        try:
            return self._records[user_id]
        except KeyError:
            raise UserNotFound(user_id) from None

    def get_profile(self, user_id: str) -> UserProfile:
        return self._require(user_id).profile

    def display_name(self, user_id: str) -> str | None:
        return self._display_names.get(user_id)

    def register_display_name(self, user_id: str, name: str) -> None:
        """Remember the transient name and re-scrub rows stored before it was known."""
        if not name or not name.strip():
            return
        record = self._require(user_id)
        self._display_names[user_id] = name.strip()
        record.transcript = [
            turn.model_copy(update={"text": scrub_text(turn.text, name)})
            for turn in record.transcript
        ]

    def save_profile(self, user_id: str, patch: ToolCallPatch) -> ApplyResult:
        record = self._require(user_id)
        name = self._display_names.get(user_id)
        sections = _scrub_sections(_json_safe(dict(patch.sections)), name)
        cleaned = ToolCallPatch(phase_tag=patch.phase_tag, sections=sections)
        seq = record.goal_seq

        def next_goal_id() -> str:
            nonlocal seq
            seq += 1
            return f"g-{seq}"

        now = self._clock.now()
        result = apply_patch(record.profile, cleaned, now, next_goal_id)
        # Reached only on success; a rejected patch leaves every field as it was.
        record.goal_seq = seq
        record.profile = result.profile
        record.write_log.append(
            {
                "phase": cleaned.phase_tag.value,
                "sections": _drop_transient_name(sections),
                "at": now.isoformat(),
            }
        )
        if result.intro_display_name:
            self.register_display_name(user_id, result.intro_display_name)
        return result

    def write_log(self, user_id: str) -> list[dict[str, Any]]:
        return [dict(entry) for entry in self._require(user_id).write_log]

    def replay_write_log(self, user_id: str) -> UserProfile:
        """Re-derive the profile from its accepted patches alone."""
        entries = self._require(user_id).write_log
        profile = UserProfile(user_id=user_id)
        seq = 0

        def next_goal_id() -> str:
            nonlocal seq
            seq += 1
            return f"g-{seq}"

        for entry in entries:
            patch = ToolCallPatch(
                phase_tag=Phase(entry["phase"]), sections=entry["sections"]
            )
            profile = apply_patch(
                profile, patch, datetime.fromisoformat(entry["at"]), next_goal_id
            ).profile
        return profile

    def append_transcript(self, user_id: str, speaker: str, text: str, phase: Phase) -> StoredTurn:
        record = self._require(user_id)
        record.turn_seq += 1
        turn = StoredTurn(
            turn_id=record.turn_seq,
            speaker=speaker,
            text=scrub_text(text, self._display_names.get(user_id)),
            timestamp=self._clock.now(),
            phase=phase,
        )
        record.transcript.append(turn)
        return turn

    def transcript(self, user_id: str) -> list[StoredTurn]:
        return list(self._require(user_id).transcript)

    def prune_transcripts(self, retention_days: int) -> int:
        """Drop rows older than the retention window; returns the count removed."""
        cutoff = self._clock.now() - timedelta(days=retention_days)
        removed = 0
        for record in self._records.values():
            kept = [turn for turn in record.transcript if turn.timestamp >= cutoff]
            removed += len(record.transcript) - len(kept)
            record.transcript = kept
        return removed

    def get_settings(self, user_id: str) -> UserSettings:
        return self._require(user_id).settings.model_copy(deep=True)

    def put_settings(self, user_id: str, settings: UserSettings) -> UserSettings:
        record = self._require(user_id)
        persona = settings.persona.model_copy(
            update={"name": scrub_text(settings.persona.name)}
        )
        record.settings = settings.model_copy(update={"persona": persona}, deep=True)
        return record.settings

    def set_goal_events(self, user_id: str, goal_id: str, events: list[CheckinEvent]) -> None:
        record = self._require(user_id)
        record.events = [e for e in record.events if e.goal_id != goal_id] + list(events)

    def delete_goal_events(self, user_id: str, goal_id: str) -> list[CheckinEvent]:
        record = self._require(user_id)
        dropped = [e for e in record.events if e.goal_id == goal_id]
        record.events = [e for e in record.events if e.goal_id != goal_id]
        return dropped

    def events(self, user_id: str, goal_id: str | None = None) -> list[CheckinEvent]:
        rows = self._require(user_id).events
        if goal_id is not None:
            rows = [e for e in rows if e.goal_id == goal_id]
        return sorted(rows, key=lambda e: e.start)

    def get_theme_state(self, user_id: str) -> ThemeState:
        return self._require(user_id).theme_state.model_copy(deep=True)

    def set_theme_state(self, user_id: str, state: ThemeState) -> None:
        name = self._display_names.get(user_id)
        self._require(user_id).theme_state = state.model_copy(
            update={"themes": [scrub_text(theme, name) for theme in state.themes]}
        )

    def all_reminder_settings(self) -> dict[str, ReminderSettings]:
        return {
            user_id: record.settings.reminder.model_copy()
            for user_id, record in self._records.items()
        }

    def update_reminder_last_sent(self, user_id: str, moment: datetime) -> None:
        record = self._require(user_id)
        record.settings.reminder = record.settings.reminder.model_copy(
            update={"last_sent": moment}
        )

    def delete_user_data(self, user_id: str) -> None:
        self._require(user_id)
        del self._records[user_id]
        self._display_names.pop(user_id, None)

    # Serialization: everything below is exactly what reaches disk.

    def _serialize(self) -> dict[str, Any]:
        users: dict[str, Any] = {}
        for user_id, record in self._records.items():
            users[user_id] = {
                "profile": record.profile.model_dump(mode="json"),
                "transcript": [turn.model_dump(mode="json") for turn in record.transcript],
                "write_log": record.write_log,
                "settings": record.settings.model_dump(mode="json"),
                "events": [event.model_dump(mode="json") for event in record.events],
                "theme_state": record.theme_state.model_dump(mode="json"),
                "goal_seq": record.goal_seq,
                "turn_seq": record.turn_seq,
            }
        return {"users": users}

    def dump_text(self) -> str:
        return json.dumps(self._serialize(), indent=2, sort_keys=True)

    def save(self, path: str | Path) -> None:
        try:
            Path(path).write_text(self.dump_text(), encoding="utf-8")
        except OSError as err:
            raise StorageUnavailable(f"cannot write {path}: {err}") from err

    @classmethod
    def load(cls, path: str | Path, clock: Clock | None = None) -> "ProfileStore":
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as err:
            raise StorageUnavailable(f"cannot read {path}: {err}") from err
        store = cls(clock=clock)
        for user_id, raw in document.get("users", {}).items():
            store._records[user_id] = _UserRecord(
                profile=UserProfile.model_validate(raw["profile"]),
                transcript=[StoredTurn.model_validate(t) for t in raw["transcript"]],
                write_log=list(raw["write_log"]),
                settings=UserSettings.model_validate(raw["settings"]),
                events=[CheckinEvent.model_validate(e) for e in raw["events"]],
                theme_state=ThemeState.model_validate(raw["theme_state"]),
                goal_seq=int(raw["goal_seq"]),
                turn_seq=int(raw["turn_seq"]),
            )
        return store

    def iter_free_text(self) -> Iterator[tuple[str, str]]:
        """Every persisted free-text value, labeled, for privacy scans."""
        for user_id, record in self._records.items():
            for turn in record.transcript:
                yield f"{user_id}/transcript/{turn.turn_id}", turn.text
            profile = record.profile
            if profile.demographic.college_year:
                yield f"{user_id}/profile/college_year", profile.demographic.college_year
            if profile.demographic.major:
                yield f"{user_id}/profile/major", profile.demographic.major
            if profile.bevs:
                for i, item in enumerate(profile.bevs.assessments):
                    yield f"{user_id}/bevs/{i}", item.value_statement
            for goal in profile.mental_health_goals:
                yield f"{user_id}/goal/{goal.goal_id}/description", goal.description
                for i, step in enumerate(goal.steps):
                    yield f"{user_id}/goal/{goal.goal_id}/step/{i}", step
                for i, item in enumerate(goal.obstacles):
                    yield f"{user_id}/goal/{goal.goal_id}/obstacle/{i}", item
            for i, theme in enumerate(record.theme_state.themes):
                yield f"{user_id}/theme/{i}", theme
            yield f"{user_id}/persona", record.settings.persona.name

    def scan_pii(self) -> list[str]:
        """Locations whose stored text still matches a scrub pattern."""
        findings = []
        for location, text in self.iter_free_text():
            name = self._display_names.get(location.split("/", 1)[0])
            if contains_pii(text, name):
                findings.append(location)
        return findings
