"""Phase-scoped write protocol for model-proposed profile patches.

Every saveProfile payload becomes a ToolCallPatch tagged with the phase it
was emitted in. Validation is all-or-nothing: a rejected patch leaves the
profile untouched, and the error carries a machine-readable code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime
from typing import Any, Callable, Mapping

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .domain import (
    BEVS_DOMAINS,
    OCEAN_TRAITS,
    BevsRecord,
    BevsStep,
    CopingStyle,
    Demographic,
    EmotionalAwareness,
    EncouragementPreference,
    Goal,
    GoalMeasures,
    GoalStatus,
    GoalTimeframe,
    GoalUnit,
    MentalHealthProfile,
    Phase,
    TraitLevel,
    UserProfile,
    compute_goal_progress,
    intro_missing_fields,
)


class PatchRejected(Exception):
    """Base for every write-protocol rejection; `code` is the wire error code."""

    code = "PatchRejected"


class WriteOutOfPhase(PatchRejected):
    code = "WriteOutOfPhase"


class SchemaViolation(PatchRejected):
    code = "SchemaViolation"


class DuplicateWrite(PatchRejected):
    code = "DuplicateWrite"


class UnknownGoal(PatchRejected):
    code = "UnknownGoal"


@dataclass(frozen=True)
class ToolCallPatch:
    """A saveProfile payload keyed by profile section, tagged with its phase.

    A complete Introduction save spans three sections in one atomic patch,
    so `sections` is a map rather than a single name.
    """

    phase_tag: Phase
    sections: Mapping[str, Any]


PHASE_FIELD_MAP: dict[Phase, frozenset[str]] = {
    Phase.INTRODUCTION: frozenset({"demographic", "personality_traits", "mental_health_profile"}),
    Phase.VALUES_CHECK_IN: frozenset({"bevs"}),
    Phase.GOAL_SETTING: frozenset({"mental_health_goals"}),  # create-only
    Phase.ACTIVE_COACHING: frozenset({"mental_health_goals"}),  # update-only
}

ALL_SECTIONS: frozenset[str] = frozenset(
    name for names in PHASE_FIELD_MAP.values() for name in names
)

INTRO_SECTIONS: frozenset[str] = PHASE_FIELD_MAP[Phase.INTRODUCTION]


class DemographicPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str | None = None
    college_year: str = Field(min_length=1)
    major: str = Field(min_length=1)


class MentalHealthPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    emotional_awareness: EmotionalAwareness
    coping_style: CopingStyle
    encouragement_preference: EncouragementPreference


class GoalMeasuresPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    unit: GoalUnit
    weekly_target: int = Field(ge=1)
    completed_units: int = Field(default=0, ge=0)


class GoalTimeframePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    start_date: date | None = None
    duration_days: int = Field(ge=1)


class GoalCreatePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    description: str = Field(min_length=1)
    measures: GoalMeasuresPayload
    timeframe: GoalTimeframePayload
    steps: list[str] = Field(min_length=1, max_length=3)
    obstacles: list[str] = Field(default_factory=list)
    completed: bool = False
    progress: int = 0


class GoalTimeframeUpdatePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    start_date: date | None = None
    duration_days: int = Field(ge=1)


class GoalUpdatePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    goal_id: str | None = None
    description: str | None = None
    completed_units: int | None = Field(default=None, ge=0)
    progress: int | None = Field(default=None, ge=0, le=100)
    completed: bool | None = None
    status: GoalStatus | None = None
    timeframe: GoalTimeframeUpdatePayload | None = None
    steps: list[str] | None = None
    obstacles: list[str] | None = None
    # Models echo their own timestamp; the store stamps the authoritative one.
    lastUpdated: datetime | None = None


@dataclass
class ApplyResult:
    profile: UserProfile
    created_goal_ids: list[str] = field(default_factory=list)
    updated_goal_ids: list[str] = field(default_factory=list)
    completed_goal_ids: list[str] = field(default_factory=list)
    rescheduled_goal_ids: list[str] = field(default_factory=list)
    intro_display_name: str | None = None
    bevs_saved: bool = False
    no_change: bool = False


def _check_sections(profile: UserProfile, patch: ToolCallPatch) -> None:
    if not patch.sections:
        raise SchemaViolation("patch carries no sections")
    unknown = set(patch.sections) - ALL_SECTIONS
    if unknown:
        raise SchemaViolation(f"unknown sections: {sorted(unknown)}")
    off_phase = set(patch.sections) - PHASE_FIELD_MAP[patch.phase_tag]
    if off_phase:
        raise WriteOutOfPhase(
            f"sections {sorted(off_phase)} are not writable during {patch.phase_tag.value}"
        )


def _check_duplicates(profile: UserProfile, patch: ToolCallPatch) -> None:
    if patch.phase_tag is Phase.INTRODUCTION and profile.intro_complete:
        raise DuplicateWrite("the introduction profile is already complete")
    if "bevs" in patch.sections and profile.bevs is not None and (
        profile.bevs.currentStep is BevsStep.DONE
    ):
        raise DuplicateWrite("a completed values check-in is already on file")


def _validate_traits(raw: Any) -> dict[str, TraitLevel]:
    if not isinstance(raw, Mapping):
        raise SchemaViolation("personality_traits must be an object")
    try:
        traits = {str(name): TraitLevel(level) for name, level in raw.items()}
    except ValueError as err:
        raise SchemaViolation(f"bad trait level: {err}") from None
    if set(traits) != set(OCEAN_TRAITS):
        raise SchemaViolation(
            "personality_traits must carry exactly the five trait names"
        )
    return traits


def _apply_introduction(profile: UserProfile, patch: ToolCallPatch, result: ApplyResult) -> UserProfile:
    missing = INTRO_SECTIONS - set(patch.sections)
    if missing:
        # The intro save happens once, with complete data.
        raise SchemaViolation(
            f"introduction saves are all-or-nothing; missing {sorted(missing)}"
        )
    try:
        demographic = DemographicPayload.model_validate(patch.sections["demographic"])
        mental_health = MentalHealthPayload.model_validate(
            patch.sections["mental_health_profile"]
        )
    except ValidationError as err:
        raise SchemaViolation(str(err)) from None
    traits = _validate_traits(patch.sections["personality_traits"])
    merged = profile.model_copy(
        update={
            "demographic": Demographic(
                name_transient=demographic.name,
                college_year=demographic.college_year,
                major=demographic.major,
            ),
            "personality_traits": traits,
            "mental_health_profile": MentalHealthProfile(
                emotional_awareness=mental_health.emotional_awareness,
                coping_style=mental_health.coping_style,
                encouragement_preference=mental_health.encouragement_preference,
            ),
        }
    )
    still_missing = intro_missing_fields(merged)
    if still_missing:
        raise SchemaViolation(f"introduction payload incomplete: {still_missing}")
    result.intro_display_name = demographic.name
    return merged


def _apply_bevs(profile: UserProfile, patch: ToolCallPatch, result: ApplyResult) -> UserProfile:
    try:
        record = BevsRecord.model_validate(patch.sections["bevs"])
    except ValidationError as err:
        raise SchemaViolation(str(err)) from None
    if record.currentStep is not BevsStep.DONE:
        raise SchemaViolation("only a completed values check-in may be saved")
    if tuple(record.domains) != BEVS_DOMAINS:
        raise SchemaViolation("bevs domains must be the four standard life domains")
    result.bevs_saved = True
    return profile.model_copy(update={"bevs": record})


def _apply_goal_creates(
    profile: UserProfile,
    patch: ToolCallPatch,
    result: ApplyResult,
    now: datetime,
    new_goal_id: Callable[[], str],
) -> UserProfile:
    raw = patch.sections["mental_health_goals"]
    if not isinstance(raw, list) or not raw:
        raise SchemaViolation("mental_health_goals must be a non-empty list")
    try:
        creates = [GoalCreatePayload.model_validate(item) for item in raw]
    except ValidationError as err:
        raise SchemaViolation(str(err)) from None
    for create in creates:
        if create.completed or create.progress != 0:
            raise SchemaViolation("new goals must start with completed false, progress 0")
    goals = list(profile.mental_health_goals)
    for create in creates:
        goal = Goal(
            goal_id=new_goal_id(),
            description=create.description,
            measures=GoalMeasures(
                unit=create.measures.unit,
                weekly_target=create.measures.weekly_target,
                completed_units=create.measures.completed_units,
            ),
            timeframe=GoalTimeframe(
                start_date=create.timeframe.start_date or now.date(),
                duration_days=create.timeframe.duration_days,
            ),
            steps=tuple(create.steps),
            obstacles=tuple(create.obstacles),
            progress=0,
            status=GoalStatus.ACTIVE,
            lastUpdated=now,
        )
        goals.append(goal)
        result.created_goal_ids.append(goal.goal_id)
    return profile.model_copy(update={"mental_health_goals": tuple(goals)})


def _locate_goal(goals: tuple[Goal, ...], update: GoalUpdatePayload) -> Goal:
    if update.goal_id is not None:
        for goal in goals:
            if goal.goal_id == update.goal_id:
                return goal
        raise UnknownGoal(f"no goal with id {update.goal_id!r}")
    if update.description is not None:
        matches = [g for g in goals if g.description == update.description]
        if len(matches) == 1:
            return matches[0]
        if not matches:
            raise UnknownGoal(f"no goal matching description {update.description!r}")
        raise UnknownGoal(f"description {update.description!r} is ambiguous")
    raise SchemaViolation("goal updates need a goal_id or a description")


def _updated_goal(goal: Goal, update: GoalUpdatePayload, now: datetime) -> Goal:
    changes: dict[str, Any] = {}
    measures = goal.measures
    if update.completed_units is not None and (
        update.completed_units != measures.completed_units
    ):
        measures = GoalMeasures(
            unit=measures.unit,
            weekly_target=measures.weekly_target,
            completed_units=update.completed_units,
        )
        changes["measures"] = measures
    if update.timeframe is not None:
        timeframe = GoalTimeframe(
            start_date=update.timeframe.start_date or goal.timeframe.start_date,
            duration_days=update.timeframe.duration_days,
        )
        if timeframe != goal.timeframe:
            changes["timeframe"] = timeframe
    if update.steps is not None and tuple(update.steps) != goal.steps:
        changes["steps"] = tuple(update.steps)
    if update.obstacles is not None and tuple(update.obstacles) != goal.obstacles:
        changes["obstacles"] = tuple(update.obstacles)

    if update.completed:
        if goal.status is not GoalStatus.COMPLETED:
            changes["status"] = GoalStatus.COMPLETED
        if goal.progress != 100:
            changes["progress"] = 100
    else:
        if update.status in (GoalStatus.ACTIVE, GoalStatus.PAUSED) and (
            update.status is not goal.status
        ):
            changes["status"] = update.status
        if "measures" in changes:
            # The weekly measure drives progress; an explicit figure only
            # applies when no unit count came with the update.
            changes["progress"] = compute_goal_progress(
                measures.completed_units, measures.weekly_target
            )
        elif update.progress is not None and update.progress != goal.progress:
            changes["progress"] = update.progress
    if not changes:
        return goal
    changes["lastUpdated"] = now
    try:
        # Revalidate rather than copy: invariants like completed-implies-100
        # must hold on the merged goal, not just the original.
        return Goal.model_validate({**goal.model_dump(), **changes})
    except ValidationError as err:
        raise SchemaViolation(str(err)) from None


def _apply_goal_updates(
    profile: UserProfile, patch: ToolCallPatch, result: ApplyResult, now: datetime
) -> UserProfile:
    raw = patch.sections["mental_health_goals"]
    if not isinstance(raw, list) or not raw:
        raise SchemaViolation("mental_health_goals must be a non-empty list")
    try:
        updates = [GoalUpdatePayload.model_validate(item) for item in raw]
    except ValidationError as err:
        raise SchemaViolation(str(err)) from None

    goals = list(profile.mental_health_goals)
    touched = False
    for update in updates:
        target = _locate_goal(tuple(goals), update)
        replacement = _updated_goal(target, update, now)
        if replacement is target:
            continue  # no-change updates are a quiet success, not an error
        touched = True
        goals[goals.index(target)] = replacement
        result.updated_goal_ids.append(replacement.goal_id)
        if replacement.status is GoalStatus.COMPLETED and target.status is not GoalStatus.COMPLETED:
            result.completed_goal_ids.append(replacement.goal_id)
        if replacement.timeframe != target.timeframe:
            result.rescheduled_goal_ids.append(replacement.goal_id)
    if not touched:
        result.no_change = True
        return profile
    return profile.model_copy(update={"mental_health_goals": tuple(goals)})


def apply_patch(
    profile: UserProfile,
    patch: ToolCallPatch,
    now: datetime,
    new_goal_id: Callable[[], str],
) -> ApplyResult:
    """Validate and merge one patch; raises a PatchRejected subtype on any fault.

    Rejection leaves no side effects: the input profile is immutable and the
    merge happens on a copy.
    """
    _check_sections(profile, patch)
    _check_duplicates(profile, patch)
    result = ApplyResult(profile=profile)
    if patch.phase_tag is Phase.INTRODUCTION:
        result.profile = _apply_introduction(profile, patch, result)
    elif patch.phase_tag is Phase.VALUES_CHECK_IN:
        result.profile = _apply_bevs(profile, patch, result)
    elif patch.phase_tag is Phase.GOAL_SETTING:
        result.profile = _apply_goal_creates(profile, patch, result, now, new_goal_id)
    else:
        result.profile = _apply_goal_updates(profile, patch, result, now)
    return result
