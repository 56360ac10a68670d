"""Values check-in step machine, owned by the engine rather than the model.

The model phrases each question; this module decides what the question is.
One user turn drives at most one step: intro -> collect_values ->
collect_scores (four times around) -> confirm -> done.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime
from typing import Any

from .domain import (
    BevsAssessment,
    BevsRecord,
    BevsStep,
    ScoreOutOfRange,
    validate_bevs_score,
)

AFFIRMATIVE_WORDS = frozenset(
    {"yes", "yeah", "yep", "sure", "ok", "okay", "save", "done", "absolutely", "definitely"}
)

_NUMBER = re.compile(r"[+-]?\d+")


def is_affirmative(text: str) -> bool:
    tokens = re.findall(r"[a-z]+", text.lower())
    return any(token in AFFIRMATIVE_WORDS for token in tokens)


def extract_score(text: str) -> int:
    """First integer token in the reply, validated to the 1-7 range."""
    match = _NUMBER.search(text)
    if match is None:
        raise ScoreOutOfRange(f"no score found in {text!r}")
    return validate_bevs_score(match.group())


@dataclass(frozen=True)
class BevsProgress:
    """The survey record plus the statement waiting for its score."""

    record: BevsRecord
    pending_statement: str | None = None

    @property
    def domain(self) -> str:
        return self.record.domains[min(self.record.domainIndex, 3)]


@dataclass(frozen=True)
class BevsStepResult:
    progress: BevsProgress
    directive: str
    save_sections: dict[str, Any] | None = None
    score_rejected: bool = False

    @property
    def finished(self) -> bool:
        return self.save_sections is not None


def start_bevs(now: datetime) -> BevsProgress:
    return BevsProgress(record=BevsRecord(startedAt=now))


def _values_directive(domain: str) -> str:
    return (
        f'Ask about the "{domain}" domain: what kind of person do they want to be, '
        "or what matters to them there? One warm question, with a natural example "
        "or two of everyday values."
    )


def _score_directive(domain: str) -> str:
    return (
        f'Ask: on a scale of 1-7, how close are their actions to their values in "{domain}"? '
        "(1 = not close at all, 7 = very close). One short question."
    )


def _confirm_directive(record: BevsRecord) -> str:
    ranked = sorted(record.assessments, key=lambda item: item.score)
    lowest, highest = ranked[0], ranked[-1]
    return (
        "Summarize the check-in in 2-3 lines: highest alignment is "
        f'"{highest.domain}" ({highest.score}/7), lowest is "{lowest.domain}" '
        f"({lowest.score}/7). Suggest one tiny values-aligned action for the lowest "
        'domain, then ask "Shall I save this values check-in and move on?"'
    )


def _save_sections(record: BevsRecord) -> dict[str, Any]:
    return {
        "bevs": {
            "startedAt": record.startedAt.isoformat(),
            "completedAt": record.completedAt.isoformat(),  # type: ignore[union-attr]
            "currentStep": BevsStep.DONE.value,
            "domainIndex": 3,
            "domains": list(record.domains),
            "assessments": [
                {
                    "domain": item.domain,
                    "value_statement": item.value_statement,
                    "score": item.score,
                }
                for item in record.assessments
            ],
        }
    }


def bevs_step(progress: BevsProgress, user_text: str, now: datetime) -> BevsStepResult:
    """Advance the machine one user turn; done records are never advanced."""
    record = progress.record
    step = record.currentStep
    if step is BevsStep.DONE:
        raise ValueError("the values check-in is already complete")

    if step is BevsStep.INTRO:
        moved = record.model_copy(update={"currentStep": BevsStep.COLLECT_VALUES})
        return BevsStepResult(
            progress=BevsProgress(record=moved),
            directive=_values_directive(record.domains[0]),
        )

    if step is BevsStep.COLLECT_VALUES:
        statement = user_text.strip()
        moved = record.model_copy(update={"currentStep": BevsStep.COLLECT_SCORES})
        return BevsStepResult(
            progress=BevsProgress(record=moved, pending_statement=statement),
            directive=_score_directive(progress.domain),
        )

    if step is BevsStep.COLLECT_SCORES:
        try:
            score = extract_score(user_text)
        except ScoreOutOfRange:
            return BevsStepResult(
                progress=progress,
                directive=(
                    "Their answer was not a number between 1 and 7. Gently re-ask "
                    f'for a 1-7 score for "{progress.domain}".'
                ),
                score_rejected=True,
            )
        assessment = BevsAssessment(
            domain=progress.domain,
            value_statement=progress.pending_statement or "",
            score=score,
        )
        assessments = record.assessments + (assessment,)
        if record.domainIndex < 3:
            moved = record.model_copy(
                update={
                    "assessments": assessments,
                    "domainIndex": record.domainIndex + 1,
                    "currentStep": BevsStep.COLLECT_VALUES,
                }
            )
            next_progress = BevsProgress(record=moved)
            return BevsStepResult(
                progress=next_progress,
                directive=_values_directive(next_progress.domain),
            )
        moved = record.model_copy(
            update={"assessments": assessments, "currentStep": BevsStep.CONFIRM}
        )
        return BevsStepResult(
            progress=BevsProgress(record=moved), directive=_confirm_directive(moved)
        )

    # confirm
    if is_affirmative(user_text):
        done = record.model_copy(
            update={"currentStep": BevsStep.DONE, "completedAt": now}
        )
        return BevsStepResult(
            progress=BevsProgress(record=done),
            directive=(
                'Thank them warmly, then say "Now that I know what matters to you, '
                "let's set a goal that aligns with your values\" and include "
                "[GOAL_SETTING_PHASE] at the end."
            ),
            save_sections=_save_sections(done),
        )
    return BevsStepResult(
        progress=progress,
        directive=(
            "They are not ready to save yet. Ask what they would like to adjust, "
            "then offer to save the values check-in again."
        ),
    )
