"""Conversation engine: one advance() per user turn, at most one transition.

Ordering inside a turn is load-bearing:
  1. distress guard (may constrain the reply, never consumes the turn)
  2. values-survey step (ValuesCheckIn only, skipped on distress turns)
  3. prompt build and gateway call - a failure here leaves the session and
     store exactly as they were
  4. commit: transcript turns, tool-call patches, marker parsing, transition
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Sequence

from .bevs import BevsProgress, bevs_step, start_bevs
from .config import LlmParams, ServiceConfig
from .distress import distress_guard
from .domain import BevsStep, Phase, can_transition
from .gateway import SAVE_PROFILE_TOOL, LlmResult, ModelGateway, PromptBundle
from .markers import parse_markers
from .patches import (
    ApplyResult,
    DuplicateWrite,
    SchemaViolation,
    ToolCallPatch,
    UnknownGoal,
    WriteOutOfPhase,
    apply_patch,  # noqa: F401  (re-exported for callers composing dry runs)
)
from .prompts import build_prompt
from .store import ProfileStore

logger = logging.getLogger("goalcoach.engine")

GREETING_TEMPLATE = (
    "Hi, I'm {persona}! I'm really glad you're here. I'd love to get to know "
    "you a little before we talk goals. How are you feeling today?"
)

RETRY_TEXT = "I'm having trouble reaching my coaching brain right now. Please try again in a moment."


class EmptyUserText(ValueError):
    code = "EmptyUserText"


@dataclass(frozen=True)
class HistoryTurn:
    speaker: str
    text: str
    timestamp: datetime


@dataclass
class SessionState:
    user_id: str
    phase: Phase
    history: list[HistoryTurn] = field(default_factory=list)
    pending_bevs: BevsProgress | None = None
    turn_count: int = 0
    phase_turn_counts: dict[Phase, int] = field(
        default_factory=lambda: {phase: 0 for phase in Phase}
    )

    def history_pairs(self) -> list[tuple[str, str]]:
        return [(turn.speaker, turn.text) for turn in self.history]


@dataclass(frozen=True)
class PatchOutcome:
    source: str  # "model" or "engine"
    status: str  # "applied", "rejected", "superseded", "unknown_tool"
    error_code: str | None = None
    result: ApplyResult | None = None


@dataclass(frozen=True)
class EngineOutput:
    reply_text: str
    transition: Phase | None = None
    applied_patches: tuple[PatchOutcome, ...] = ()
    resource_footer_attached: bool = False
    gateway_failed: bool = False


def resume_phase(profile) -> Phase:
    if not profile.intro_complete:
        return Phase.INTRODUCTION
    if profile.bevs is None or profile.bevs.currentStep is not BevsStep.DONE:
        return Phase.VALUES_CHECK_IN
    if not profile.mental_health_goals:
        return Phase.GOAL_SETTING
    return Phase.ACTIVE_COACHING


class Engine:
    def __init__(
        self,
        store: ProfileStore,
        gateway: ModelGateway,
        params: LlmParams,
        config: ServiceConfig,
        lexicon: tuple[str, ...],
    ) -> None:
        self._store = store
        self._gateway = gateway
        self._params = params
        self._config = config
        self._lexicon = lexicon

    @property
    def store(self) -> ProfileStore:
        return self._store

    def start_session(self, user_id: str, persona_name: str = "Coach") -> SessionState:
        profile = self._store.get_profile(user_id)
        phase = resume_phase(profile)
        transcript = self._store.transcript(user_id)
        history = [
            HistoryTurn(speaker=t.speaker, text=t.text, timestamp=t.timestamp)
            for t in transcript
        ]
        counts = {p: 0 for p in Phase}
        for t in transcript:
            if t.speaker == "user":
                counts[t.phase] += 1
        session = SessionState(
            user_id=user_id,
            phase=phase,
            history=history,
            turn_count=sum(1 for t in transcript if t.speaker == "user"),
            phase_turn_counts=counts,
        )
        if phase is Phase.VALUES_CHECK_IN:
            session.pending_bevs = start_bevs(self._store.clock.now())
        if phase is Phase.INTRODUCTION and not history:
            greeting = GREETING_TEMPLATE.format(persona=persona_name)
            stored = self._store.append_transcript(user_id, "coach", greeting, phase)
            session.history.append(
                HistoryTurn(speaker="coach", text=stored.text, timestamp=stored.timestamp)
            )
        return session

    def advance(
        self, session: SessionState, user_text: str, persona_name: str = "Coach"
    ) -> EngineOutput:
        if not user_text or not user_text.strip():
            raise EmptyUserText("user_text must be non-empty")
        now = self._store.clock.now()
        phase = session.phase

        footer_directive = distress_guard(user_text, self._lexicon)

        # The survey machine is advanced speculatively; nothing is committed
        # until the gateway answers.
        next_bevs = session.pending_bevs
        bevs_sections: dict[str, Any] | None = None
        directive = footer_directive or ""
        if phase is Phase.VALUES_CHECK_IN and footer_directive is None:
            progress = session.pending_bevs or start_bevs(now)
            step = bevs_step(progress, user_text, now)
            next_bevs = step.progress
            bevs_sections = step.save_sections
            directive = step.directive

        current_step = "intro"
        domain_index = 0
        source = next_bevs if next_bevs is not None else session.pending_bevs
        if source is not None:
            current_step = source.record.currentStep.value
            domain_index = source.record.domainIndex

        bundle = build_prompt(
            phase=phase,
            profile=self._store.get_profile(session.user_id),
            history=session.history_pairs(),
            persona_name=persona_name,
            user_text=user_text,
            turn_index=session.phase_turn_counts[phase],
            current_step=current_step,
            domain_index=domain_index,
            directive=directive,
            history_window=self._config.history_window,
        )
        try:
            result = self._gateway.complete(bundle, self._params)
        except Exception as err:
            logger.warning("gateway failure for %s: %s", session.user_id, err)
            return EngineOutput(reply_text=RETRY_TEXT, gateway_failed=True)

        # Commit point: the turn happened.
        stored_user = self._store.append_transcript(session.user_id, "user", user_text, phase)
        session.history.append(
            HistoryTurn(speaker="user", text=stored_user.text, timestamp=stored_user.timestamp)
        )
        session.turn_count += 1
        session.phase_turn_counts[phase] += 1
        session.pending_bevs = next_bevs

        outcomes = list(self._apply_tool_calls(session, phase, result, bevs_sections))

        clean_text, marker_target = parse_markers(result.text)
        if marker_target is not None and not can_transition(phase, marker_target):
            logger.warning(
                "illegal marker transition %s -> %s discarded for %s",
                phase.value,
                marker_target.value,
                session.user_id,
            )
            marker_target = None

        transition = self._pick_transition(phase, outcomes, marker_target)

        if not clean_text.strip():
            clean_text = "Thank you for sharing that with me."
        stored_coach = self._store.append_transcript(session.user_id, "coach", clean_text, phase)
        session.history.append(
            HistoryTurn(
                speaker="coach", text=stored_coach.text, timestamp=stored_coach.timestamp
            )
        )

        if transition is not None:
            session.phase = transition
            if transition is Phase.VALUES_CHECK_IN:
                session.pending_bevs = start_bevs(now)
            elif phase is Phase.VALUES_CHECK_IN:
                session.pending_bevs = None

        return EngineOutput(
            reply_text=stored_coach.text,
            transition=transition,
            applied_patches=tuple(outcomes),
            resource_footer_attached=footer_directive is not None,
        )

    def _apply_tool_calls(
        self,
        session: SessionState,
        phase: Phase,
        result: LlmResult,
        bevs_sections: dict[str, Any] | None,
    ):
        for call in result.tool_calls:
            if call.tool_name != SAVE_PROFILE_TOOL:
                yield PatchOutcome(source="model", status="unknown_tool")
                continue
            if phase is Phase.VALUES_CHECK_IN:
                # The engine owns the survey record; a model-drafted copy is
                # redundant at best and wrong at worst.
                yield PatchOutcome(source="model", status="superseded")
                continue
            yield self._save(session.user_id, phase, call.payload, source="model")
        if bevs_sections is not None:
            yield self._save(session.user_id, phase, bevs_sections, source="engine")

    def _save(self, user_id: str, phase: Phase, payload: Any, source: str) -> PatchOutcome:
        if not isinstance(payload, dict):
            logger.warning("non-object tool payload rejected for %s", user_id)
            return PatchOutcome(source=source, status="rejected", error_code="SchemaViolation")
        try:
            applied = self._store.save_profile(
                user_id, ToolCallPatch(phase_tag=phase, sections=payload)
            )
        except (SchemaViolation, WriteOutOfPhase, DuplicateWrite, UnknownGoal) as err:
            code = getattr(err, "code", type(err).__name__)
            logger.warning("patch rejected for %s: %s", user_id, code)
            return PatchOutcome(source=source, status="rejected", error_code=code)
        return PatchOutcome(source=source, status="applied", result=applied)

    @staticmethod
    def _pick_transition(
        phase: Phase, outcomes: Sequence[PatchOutcome], marker_target: Phase | None
    ) -> Phase | None:
        intro_saved = phase is Phase.INTRODUCTION and any(
            o.status == "applied" and o.result is not None and o.result.profile.intro_complete
            for o in outcomes
        )
        if intro_saved:
            return Phase.VALUES_CHECK_IN
        bevs_saved = any(
            o.status == "applied" and o.result is not None and o.result.bevs_saved
            for o in outcomes
        )
        if bevs_saved:
            return Phase.GOAL_SETTING
        return marker_target
