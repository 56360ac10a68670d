"""Service facade: chat orchestration, dashboard assembly, settings, reminders.

Everything the HTTP layer calls lives here, so the API stays a thin adapter
and every behavior is testable without a server.
"""

from __future__ import annotations

from datetime import datetime, timedelta
from typing import Sequence

from pydantic import BaseModel, ConfigDict

from .config import LlmParams, ServiceConfig
from .distress import load_lexicon
from .domain import Goal, Phase
from .engine import Engine, EngineOutput, SessionState, resume_phase
from .gateway import ModelGateway
from .metrics import (
    CheckinView,
    DashboardPayload,
    GoalView,
    InsightsView,
    NotReady,
    checkin_consistency,
    dartboard_view,
    overall_goal_progress,
)
from .providers import CalendarProvider, EmailProvider, InMemoryCalendar, InMemoryEmail
from .resources import SupportResource, load_resources
from .scheduler import (
    ReminderFrequency,
    TimeWindow,
    due_reminders,
    schedule_goal_checkins,
)
from .store import ProfileStore, ThemeState, UserSettings
from .style import classify_style
from .themes import summarize_themes


class ChatReply(BaseModel):
    model_config = ConfigDict(frozen=True)

    reply_text: str
    display_phase: str
    resource_footer_attached: bool = False
    gateway_failed: bool = False
    patches: tuple[dict, ...] = ()


class SettingsUpdate(BaseModel):
    """Partial settings write; absent fields keep their current values."""

    model_config = ConfigDict(extra="forbid")

    frequency: ReminderFrequency | None = None
    enabled: bool | None = None
    window: TimeWindow | None = None
    persona_name: str | None = None
    persona_avatar: str | None = None
    persona_gender: str | None = None


class CoachService:
    def __init__(
        self,
        store: ProfileStore,
        gateway: ModelGateway,
        config: ServiceConfig | None = None,
        params: LlmParams | None = None,
        calendar: CalendarProvider | None = None,
        email: EmailProvider | None = None,
        resources: list[SupportResource] | None = None,
        lexicon: tuple[str, ...] | None = None,
    ) -> None:
        self._store = store
        self._gateway = gateway
        self._config = config or ServiceConfig()
        self._params = params or LlmParams()
        self._calendar = calendar if calendar is not None else InMemoryCalendar()
        self._email = email if email is not None else InMemoryEmail()
        self._resources = (
            resources if resources is not None else load_resources(self._config.resources_path)
        )
        self._engine = Engine(
            store=store,
            gateway=gateway,
            params=self._params,
            config=self._config,
            lexicon=lexicon if lexicon is not None else load_lexicon(self._config.lexicon_path),
        )
        self._sessions: dict[str, SessionState] = {}

    @property
    def store(self) -> ProfileStore:
        return self._store

    @property
    def calendar(self) -> CalendarProvider:
        return self._calendar

    @property
    def email(self) -> EmailProvider:
        return self._email

    # Chat

    def _session(self, user_id: str) -> SessionState:
        session = self._sessions.get(user_id)
        if session is None:
            session = self._engine.start_session(user_id, self._persona_name(user_id))
            self._sessions[user_id] = session
        return session

    def _persona_name(self, user_id: str) -> str:
        return self._store.get_settings(user_id).persona.name

    def chat(self, user_id: str, text: str) -> ChatReply:
        self._store.ensure_user(user_id)
        session = self._session(user_id)
        output = self._engine.advance(session, text, self._persona_name(user_id))
        self._apply_goal_side_effects(user_id, output)
        return ChatReply(
            reply_text=output.reply_text,
            display_phase=session.phase.display_label,
            resource_footer_attached=output.resource_footer_attached,
            gateway_failed=output.gateway_failed,
            patches=tuple(
                {"status": p.status, "error_code": p.error_code}
                for p in output.applied_patches
            ),
        )

    def transcript_view(self, user_id: str) -> list[dict]:
        return [
            {
                "speaker": turn.speaker,
                "text": turn.text,
                "timestamp": turn.timestamp.isoformat(),
            }
            for turn in self._store.transcript(user_id)
        ]

    def _apply_goal_side_effects(self, user_id: str, output: EngineOutput) -> None:
        created: list[str] = []
        completed: list[str] = []
        rescheduled: list[str] = []
        for outcome in output.applied_patches:
            if outcome.status != "applied" or outcome.result is None:
                continue
            created.extend(outcome.result.created_goal_ids)
            completed.extend(outcome.result.completed_goal_ids)
            rescheduled.extend(outcome.result.rescheduled_goal_ids)
        for goal_id in created + rescheduled:
            self._schedule_goal(user_id, goal_id)
        for goal_id in completed:
            self._unschedule_goal(user_id, goal_id)

    def _find_goal(self, user_id: str, goal_id: str) -> Goal:
        for goal in self._store.get_profile(user_id).mental_health_goals:
            if goal.goal_id == goal_id:
                return goal
        raise KeyError(goal_id)

    def _schedule_goal(self, user_id: str, goal_id: str) -> None:
        goal = self._find_goal(user_id, goal_id)
        settings = self._store.get_settings(user_id)
        busy = []
        if settings.calendar_connected:
            span_start = goal.timeframe.start_date
            span_end = span_start + timedelta(days=goal.timeframe.duration_days + 2)
            busy = self._calendar.free_busy(user_id, span_start, span_end)
        events = schedule_goal_checkins(
            goal, settings.window, busy, link=self._config.dashboard_url
        )
        self._store.set_goal_events(user_id, goal_id, events)
        if settings.calendar_connected:
            self._calendar.delete_goal_events(user_id, goal_id)
            description = "Steps:\n" + "\n".join(
                f"- {step}" for step in goal.steps
            ) + f"\nDashboard: {self._config.dashboard_url}"
            for event in events:
                self._calendar.create_event(
                    user_id,
                    goal_id,
                    title=f"Coach check-in ({event.kind.value})",
                    start=event.start,
                    duration_minutes=event.duration_minutes,
                    description=description,
                )

    def _unschedule_goal(self, user_id: str, goal_id: str) -> None:
        self._store.delete_goal_events(user_id, goal_id)
        settings = self._store.get_settings(user_id)
        if settings.calendar_connected:
            self._calendar.delete_goal_events(user_id, goal_id)

    # Dashboard

    def dashboard(self, user_id: str) -> DashboardPayload:
        profile = self._store.get_profile(user_id)
        session = self._sessions.get(user_id)
        phase = session.phase if session is not None else resume_phase(profile)
        overall, active_count = overall_goal_progress(profile.mental_health_goals)
        transcript = self._store.transcript(user_id)
        checkin_stamps = [
            turn.timestamp
            for turn in transcript
            if turn.speaker == "user" and turn.phase is Phase.ACTIVE_COACHING
        ]
        consistency = checkin_consistency(
            checkin_stamps,
            self._store.clock.today(),
            self._config.consistency_window_days,
        )
        goals_view = tuple(
            GoalView(
                goal_id=goal.goal_id,
                description=goal.description,
                duration_days=goal.timeframe.duration_days,
                next_steps=goal.steps,
                progress=goal.progress,
                status=goal.status.value,
                scheduled_checkins=tuple(
                    CheckinView(
                        kind=event.kind.value,
                        start=event.start,
                        link=event.link,
                        fallback=event.fallback,
                    )
                    for event in self._store.events(user_id, goal.goal_id)
                ),
            )
            for goal in profile.mental_health_goals
        )
        try:
            dartboard = tuple(dartboard_view(profile.bevs))
        except NotReady:
            dartboard = ()
        theme_state = self._refresh_themes(user_id, transcript)
        user_messages = [turn.text for turn in transcript if turn.speaker == "user"]
        # Threshold classification only: dashboard reads stay deterministic
        # and never spend a gateway call.
        style = classify_style(user_messages) if user_messages else None
        return DashboardPayload(
            display_phase=phase.display_label,
            overall_progress=overall,
            consistency=consistency,
            active_goal_count=active_count,
            goals_view=goals_view,
            insights=InsightsView(
                themes=tuple(theme_state.themes),
                themes_stale=theme_state.stale,
                style=style,
                dartboard=dartboard,
            ),
            resources=tuple(self._resources),
        )

    def _refresh_themes(self, user_id: str, transcript) -> ThemeState:
        state = self._store.get_theme_state(user_id)
        today = self._store.clock.today()
        if not transcript or state.computed_on == today:
            return state
        history = [(turn.speaker, turn.text) for turn in transcript]
        result = summarize_themes(
            history, self._gateway, previous=tuple(state.themes), params=self._params
        )
        # Stamp the attempt date either way; one gateway call per user per day.
        new_state = ThemeState(
            themes=list(result.themes), computed_on=today, stale=result.stale
        )
        self._store.set_theme_state(user_id, new_state)
        return self._store.get_theme_state(user_id)

    # Settings

    def get_settings(self, user_id: str) -> UserSettings:
        return self._store.get_settings(user_id)

    def update_settings(self, user_id: str, update: SettingsUpdate) -> UserSettings:
        current = self._store.get_settings(user_id)
        reminder = current.reminder
        if update.frequency is not None:
            reminder = reminder.model_copy(update={"frequency": update.frequency})
        if update.enabled is not None:
            if update.enabled and not current.reminder.enabled:
                # Anchor the cadence at the flip, else a user enabled years
                # after signup would be instantly "overdue" (or never due).
                reminder = reminder.model_copy(
                    update={"enabled": True, "last_sent": self._store.clock.now()}
                )
            else:
                reminder = reminder.model_copy(update={"enabled": update.enabled})
        persona = current.persona
        if update.persona_name is not None:
            persona = persona.model_copy(update={"name": update.persona_name})
        if update.persona_avatar is not None:
            persona = persona.model_copy(update={"avatar": update.persona_avatar})
        if update.persona_gender is not None:
            persona = persona.model_copy(update={"gender": update.persona_gender})
        settings = current.model_copy(
            update={
                "reminder": reminder,
                "persona": persona,
                "window": current.window if update.window is None else update.window,
            }
        )
        validated = UserSettings.model_validate(settings.model_dump())
        return self._store.put_settings(user_id, validated)

    def connect_calendar(self, user_id: str) -> UserSettings:
        settings = self._store.get_settings(user_id)
        settings = settings.model_copy(update={"calendar_connected": True})
        stored = self._store.put_settings(user_id, settings)
        # Re-derive events for active goals now that real busy data exists.
        for goal in self._store.get_profile(user_id).mental_health_goals:
            if goal.status.value == "active":
                self._schedule_goal(user_id, goal.goal_id)
        return stored

    # Lifecycle

    def delete_user(self, user_id: str) -> None:
        self._store.delete_user_data(user_id)
        self._calendar.delete_user_events(user_id)
        self._sessions.pop(user_id, None)

    def resources(self) -> list[SupportResource]:
        return list(self._resources)

    # Reminders

    def send_due_reminders(self, now: datetime | None = None) -> list[str]:
        moment = now or self._store.clock.now()
        due = due_reminders(self._store.all_reminder_settings(), moment)
        for user_id in due:
            body = (
                "Hi! This is your coaching check-in reminder.\n"
                f"See your progress and goals: {self._config.dashboard_url}\n"
                "Reply in the chat whenever you have a minute."
            )
            self._email.send(user_id, "Your coaching check-in", body)
            self._store.update_reminder_last_sent(user_id, moment)
        return due
