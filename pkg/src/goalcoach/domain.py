"""Core data types and pure arithmetic shared by every other module.

Everything here is an immutable value or a pure function; no I/O.
"""

from __future__ import annotations

from datetime import date, datetime
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator


class InvalidTarget(ValueError):
    """A goal's weekly target is zero or negative."""


class ScoreOutOfRange(ValueError):
    """A values-survey score is not an integer between 1 and 7."""


class Phase(str, Enum):
    INTRODUCTION = "Introduction"
    VALUES_CHECK_IN = "ValuesCheckIn"
    GOAL_SETTING = "GoalSetting"
    ACTIVE_COACHING = "ActiveCoaching"

    @property
    def display_label(self) -> str:
        """Dashboard label; the values check-in is shown as part of Introduction."""
        return _DISPLAY_LABELS[self]


LEGAL_TRANSITIONS: dict[Phase, frozenset[Phase]] = {
    Phase.INTRODUCTION: frozenset({Phase.VALUES_CHECK_IN}),
    Phase.VALUES_CHECK_IN: frozenset({Phase.GOAL_SETTING}),
    Phase.GOAL_SETTING: frozenset({Phase.ACTIVE_COACHING}),
    Phase.ACTIVE_COACHING: frozenset({Phase.GOAL_SETTING}),
}

_DISPLAY_LABELS: dict[Phase, str] = {
    Phase.INTRODUCTION: "Introduction",
    Phase.VALUES_CHECK_IN: "Introduction",
    Phase.GOAL_SETTING: "Goal Setting",
    Phase.ACTIVE_COACHING: "Active Coaching",
}


def can_transition(current: Phase, target: Phase) -> bool:
    return target in LEGAL_TRANSITIONS[current]


class TraitLevel(str, Enum):
    HIGH = "high"
    MODERATE = "moderate"
    LOW = "low"


OCEAN_TRAITS: tuple[str, ...] = (
    "Openness",
    "Conscientiousness",
    "Extraversion",
    "Agreeableness",
    "Neuroticism",
)


class EmotionalAwareness(str, Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


class CopingStyle(str, Enum):
    HEALTHY = "healthy"
    MIXED = "mixed"
    AVOIDANT = "avoidant"


class EncouragementPreference(str, Enum):
    PRAISE = "praise"
    PROGRESS = "progress"
    ACHIEVEMENT = "achievement"
    EFFORT = "effort"


class GoalUnit(str, Enum):
    COUNT = "count"
    MINUTES = "minutes"


class GoalStatus(str, Enum):
    ACTIVE = "active"
    PAUSED = "paused"
    COMPLETED = "completed"


class BevsStep(str, Enum):
    INTRO = "intro"
    COLLECT_VALUES = "collect_values"
    COLLECT_SCORES = "collect_scores"
    CONFIRM = "confirm"
    DONE = "done"


BEVS_DOMAINS: tuple[str, ...] = (
    "Work/Studies",
    "Relationships",
    "Personal Growth/Health",
    "Leisure",
)

BEVS_SCORE_MIN = 1
BEVS_SCORE_MAX = 7


class Tone(str, Enum):
    FORMAL = "formal"
    CASUAL = "casual"


class MessageLength(str, Enum):
    SHORT = "short"
    LONG = "long"


class EmotionalStyle(str, Enum):
    EXPRESSIVE = "expressive"
    NEUTRAL = "neutral"


class ThinkingStyle(str, Enum):
    DATA_DRIVEN = "data-driven"
    EXPERIENCE_BASED = "experience-based"


class CommunicationStyle(BaseModel):
    """Four-key style record; exactly these keys, exactly these values."""

    model_config = ConfigDict(frozen=True)

    tone: Tone
    length: MessageLength
    emotional_style: EmotionalStyle
    thinking_style: ThinkingStyle


class BevsAssessment(BaseModel):
    model_config = ConfigDict(frozen=True)

    domain: str
    value_statement: str
    score: int = Field(ge=BEVS_SCORE_MIN, le=BEVS_SCORE_MAX)


class BevsRecord(BaseModel):
    """Values-survey state in its wire shape (camelCase keys are the save contract)."""

    model_config = ConfigDict(frozen=True)

    startedAt: datetime
    completedAt: datetime | None = None
    currentStep: BevsStep = BevsStep.INTRO
    domainIndex: int = Field(default=0, ge=0, le=3)
    domains: tuple[str, str, str, str] = BEVS_DOMAINS
    assessments: tuple[BevsAssessment, ...] = ()

    @model_validator(mode="after")
    def _step_shape(self) -> "BevsRecord":
        # Assessments are appended strictly in domain order, so positional
        # equality is the whole coverage check.
        for i, item in enumerate(self.assessments):
            if i > 3 or item.domain != self.domains[i]:
                raise ValueError("assessments must follow the domain order")
        if self.currentStep in (BevsStep.CONFIRM, BevsStep.DONE):
            if len(self.assessments) != 4:
                raise ValueError("confirm and done require all four assessments")
            if self.domainIndex != 3:
                raise ValueError("confirm and done require domainIndex 3")
        elif self.domainIndex != len(self.assessments):
            raise ValueError("domainIndex must equal the count of assessed domains")
        if self.currentStep is BevsStep.DONE and self.completedAt is None:
            raise ValueError("a done record must carry completedAt")
        return self


class GoalMeasures(BaseModel):
    model_config = ConfigDict(frozen=True)

    unit: GoalUnit
    weekly_target: int = Field(ge=1)
    completed_units: int = Field(default=0, ge=0)


class GoalTimeframe(BaseModel):
    model_config = ConfigDict(frozen=True)

    start_date: date
    duration_days: int = Field(ge=1)


class Goal(BaseModel):
    model_config = ConfigDict(frozen=True)

    goal_id: str
    description: str
    measures: GoalMeasures
    timeframe: GoalTimeframe
    steps: tuple[str, ...] = ()
    obstacles: tuple[str, ...] = ()
    progress: int = Field(default=0, ge=0, le=100)
    status: GoalStatus = GoalStatus.ACTIVE
    lastUpdated: datetime

    @model_validator(mode="after")
    def _completed_is_full(self) -> "Goal":
        if self.status is GoalStatus.COMPLETED and self.progress != 100:
            raise ValueError("a completed goal must show progress 100")
        return self


class Demographic(BaseModel):
    model_config = ConfigDict(frozen=True)

    # Held in memory for prompt personalization only; excluded from every dump.
    name_transient: str | None = Field(default=None, exclude=True)
    college_year: str | None = None
    major: str | None = None


class MentalHealthProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    emotional_awareness: EmotionalAwareness | None = None
    coping_style: CopingStyle | None = None
    encouragement_preference: EncouragementPreference | None = None


class UserProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    user_id: str
    demographic: Demographic = Field(default_factory=Demographic)
    personality_traits: dict[str, TraitLevel] = Field(default_factory=dict)
    mental_health_profile: MentalHealthProfile = Field(default_factory=MentalHealthProfile)
    bevs: BevsRecord | None = None
    mental_health_goals: tuple[Goal, ...] = ()
    communication_style: CommunicationStyle | None = None

    @model_validator(mode="after")
    def _trait_keys_known(self) -> "UserProfile":
        unknown = set(self.personality_traits) - set(OCEAN_TRAITS)
        if unknown:
            raise ValueError(f"unknown personality traits: {sorted(unknown)}")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def intro_complete(self) -> bool:
        return not intro_missing_fields(self)


INTRO_REQUIRED_FIELDS: tuple[str, ...] = (
    "demographic.college_year",
    "demographic.major",
    "mental_health_profile.emotional_awareness",
    "mental_health_profile.coping_style",
    "mental_health_profile.encouragement_preference",
    "personality_traits.Openness",
    "personality_traits.Conscientiousness",
    "personality_traits.Extraversion",
    "personality_traits.Agreeableness",
    "personality_traits.Neuroticism",
)


def compute_goal_progress(completed_units: int, weekly_target: int) -> int:
    """Percent of the weekly target met, capped at 100.

    Rounds half away from zero; done in integer arithmetic because the
    built-in round() would land (1, 8) on 12 instead of 13.
    """
    if weekly_target < 1:
        raise InvalidTarget(f"weekly_target must be at least 1, got {weekly_target}")
    if completed_units < 0:
        raise ValueError(f"completed_units must be non-negative, got {completed_units}")
    return min(100, (200 * completed_units + weekly_target) // (2 * weekly_target))


def validate_bevs_score(raw: str) -> int:
    """Parse a user-supplied score token, accepting only integers 1 to 7."""
    try:
        score = int(raw.strip())
    except (ValueError, AttributeError):
        raise ScoreOutOfRange(f"not an integer: {raw!r}") from None
    if not BEVS_SCORE_MIN <= score <= BEVS_SCORE_MAX:
        raise ScoreOutOfRange(f"score must be between 1 and 7, got {score}")
    return score


def intro_missing_fields(profile: UserProfile) -> list[str]:
    """Names of the ten required introduction items not yet present."""

    def filled(text: str | None) -> bool:
        return text is not None and bool(text.strip())

    present = {
        "demographic.college_year": filled(profile.demographic.college_year),
        "demographic.major": filled(profile.demographic.major),
        "mental_health_profile.emotional_awareness": profile.mental_health_profile.emotional_awareness is not None,
        "mental_health_profile.coping_style": profile.mental_health_profile.coping_style is not None,
        "mental_health_profile.encouragement_preference": profile.mental_health_profile.encouragement_preference is not None,
    }
    for trait in OCEAN_TRAITS:
        present[f"personality_traits.{trait}"] = trait in profile.personality_traits
    return [name for name in INTRO_REQUIRED_FIELDS if not present[name]]
