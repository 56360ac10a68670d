"""Domain arithmetic and type invariants, checked against independent oracles."""

from datetime import date, datetime
from decimal import ROUND_HALF_UP, Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goalcoach.domain import (
    BEVS_DOMAINS,
    INTRO_REQUIRED_FIELDS,
    LEGAL_TRANSITIONS,
    OCEAN_TRAITS,
    BevsAssessment,
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
    InvalidTarget,
    MentalHealthProfile,
    Phase,
    ScoreOutOfRange,
    TraitLevel,
    UserProfile,
    can_transition,
    compute_goal_progress,
    intro_missing_fields,
    validate_bevs_score,
)


def progress_oracle(completed: int, target: int) -> int:
    """Decimal-based half-away-from-zero rounding, independent of the implementation."""
    pct = Decimal(100) * Decimal(completed) / Decimal(target)
    return min(100, int(pct.quantize(Decimal(1), rounding=ROUND_HALF_UP)))


class TestComputeGoalProgress:
    def test_two_of_five_rounds_up_to_forty(self):
        assert compute_goal_progress(2, 5) == 40

    def test_three_of_seven(self):
        assert progress_oracle(3, 7) == 43
        assert compute_goal_progress(3, 7) == 43

    def test_zero_numerator(self):
        assert compute_goal_progress(0, 5) == 0

    def test_brute_force_table(self):
        for completed in range(0, 21):
            for target in range(1, 11):
                assert compute_goal_progress(completed, target) == progress_oracle(
                    completed, target
                ), (completed, target)

    def test_half_rounds_away_from_zero(self):
        # 1/8 = 12.5%; banker's rounding would give 12.
        assert compute_goal_progress(1, 8) == 13
        assert compute_goal_progress(3, 8) == 38

    def test_invalid_target(self):
        with pytest.raises(InvalidTarget):
            compute_goal_progress(2, 0)
        with pytest.raises(InvalidTarget):
            compute_goal_progress(2, -1)

    def test_negative_completed_rejected(self):
        with pytest.raises(ValueError):
            compute_goal_progress(-1, 5)

    @given(completed=st.integers(0, 10_000), target=st.integers(1, 1_000))
    def test_matches_oracle_everywhere(self, completed: int, target: int):
        assert compute_goal_progress(completed, target) == progress_oracle(completed, target)

    @given(completed=st.integers(0, 500), target=st.integers(1, 100))
    def test_monotone_and_capped(self, completed: int, target: int):
        here = compute_goal_progress(completed, target)
        assert 0 <= here <= 100
        assert compute_goal_progress(completed + 1, target) >= here


class TestValidateBevsScore:
    def test_plain_integer(self):
        assert validate_bevs_score("3") == 3

    def test_boundaries(self):
        assert validate_bevs_score("1") == 1
        assert validate_bevs_score("7") == 7

    def test_out_of_range(self):
        for raw in ("0", "8", "-3", "100"):
            with pytest.raises(ScoreOutOfRange):
                validate_bevs_score(raw)

    def test_non_integer(self):
        for raw in ("three", "3.5", "", "  ", "7th"):
            with pytest.raises(ScoreOutOfRange):
                validate_bevs_score(raw)

    def test_whitespace_tolerated(self):
        assert validate_bevs_score(" 5 ") == 5


def build_profile(fields: set[str]) -> UserProfile:
    """Construct a profile with exactly the given dotted intro items filled."""
    traits = {
        name.split(".", 1)[1]: TraitLevel.MODERATE
        for name in fields
        if name.startswith("personality_traits.")
    }
    return UserProfile(
        user_id="u-test",
        demographic=Demographic(
            college_year="senior" if "demographic.college_year" in fields else None,
            major="Computer Science" if "demographic.major" in fields else None,
        ),
        personality_traits=traits,
        mental_health_profile=MentalHealthProfile(
            emotional_awareness=(
                EmotionalAwareness.HIGH
                if "mental_health_profile.emotional_awareness" in fields
                else None
            ),
            coping_style=(
                CopingStyle.HEALTHY
                if "mental_health_profile.coping_style" in fields
                else None
            ),
            encouragement_preference=(
                EncouragementPreference.PROGRESS
                if "mental_health_profile.encouragement_preference" in fields
                else None
            ),
        ),
    )


class TestIntroMissingFields:
    def test_fresh_profile_missing_everything(self):
        profile = UserProfile(user_id="u-fresh")
        assert intro_missing_fields(profile) == list(INTRO_REQUIRED_FIELDS)
        assert profile.intro_complete is False

    def test_complete_profile(self):
        profile = build_profile(set(INTRO_REQUIRED_FIELDS))
        assert intro_missing_fields(profile) == []
        assert profile.intro_complete is True

    def test_missing_only_neuroticism(self):
        fields = set(INTRO_REQUIRED_FIELDS) - {"personality_traits.Neuroticism"}
        profile = build_profile(fields)
        assert intro_missing_fields(profile) == ["personality_traits.Neuroticism"]

    def test_blank_strings_count_as_missing(self):
        profile = build_profile(set(INTRO_REQUIRED_FIELDS)).model_copy(
            update={"demographic": Demographic(college_year="  ", major="CS")}
        )
        assert "demographic.college_year" in intro_missing_fields(profile)

    @given(
        present=st.sets(st.sampled_from(sorted(INTRO_REQUIRED_FIELDS)))
    )
    def test_set_difference_oracle(self, present: set[str]):
        profile = build_profile(present)
        expected = [name for name in INTRO_REQUIRED_FIELDS if name not in present]
        assert intro_missing_fields(profile) == expected
        assert profile.intro_complete is (not expected)


class TestPhase:
    def test_only_the_four_legal_edges(self):
        legal = {
            (src, dst)
            for src, targets in LEGAL_TRANSITIONS.items()
            for dst in targets
        }
        assert legal == {
            (Phase.INTRODUCTION, Phase.VALUES_CHECK_IN),
            (Phase.VALUES_CHECK_IN, Phase.GOAL_SETTING),
            (Phase.GOAL_SETTING, Phase.ACTIVE_COACHING),
            (Phase.ACTIVE_COACHING, Phase.GOAL_SETTING),
        }
        for src in Phase:
            for dst in Phase:
                assert can_transition(src, dst) == ((src, dst) in legal)

    def test_display_collapses_values_check_in(self):
        assert Phase.VALUES_CHECK_IN.display_label == "Introduction"
        assert Phase.INTRODUCTION.display_label == "Introduction"
        assert Phase.GOAL_SETTING.display_label == "Goal Setting"
        assert Phase.ACTIVE_COACHING.display_label == "Active Coaching"


def make_assessments(count: int) -> tuple[BevsAssessment, ...]:
    return tuple(
        BevsAssessment(domain=BEVS_DOMAINS[i], value_statement=f"value {i}", score=4)
        for i in range(count)
    )


class TestBevsRecord:
    def test_done_requires_four_assessments_and_completed_at(self):
        record = BevsRecord(
            startedAt=datetime(2026, 1, 5, 10, 0),
            completedAt=datetime(2026, 1, 5, 10, 20),
            currentStep=BevsStep.DONE,
            domainIndex=3,
            assessments=make_assessments(4),
        )
        assert {a.domain for a in record.assessments} == set(BEVS_DOMAINS)

        with pytest.raises(ValueError):
            BevsRecord(
                startedAt=datetime(2026, 1, 5, 10, 0),
                currentStep=BevsStep.DONE,
                domainIndex=3,
                assessments=make_assessments(4),
            )

    def test_confirm_requires_all_four(self):
        with pytest.raises(ValueError):
            BevsRecord(
                startedAt=datetime(2026, 1, 5, 10, 0),
                currentStep=BevsStep.CONFIRM,
                domainIndex=3,
                assessments=make_assessments(3),
            )

    def test_in_progress_index_tracks_assessments(self):
        BevsRecord(
            startedAt=datetime(2026, 1, 5, 10, 0),
            currentStep=BevsStep.COLLECT_SCORES,
            domainIndex=2,
            assessments=make_assessments(2),
        )
        with pytest.raises(ValueError):
            BevsRecord(
                startedAt=datetime(2026, 1, 5, 10, 0),
                currentStep=BevsStep.COLLECT_VALUES,
                domainIndex=1,
                assessments=make_assessments(2),
            )

    def test_out_of_order_domains_rejected(self):
        swapped = (
            BevsAssessment(domain=BEVS_DOMAINS[1], value_statement="x", score=4),
        )
        with pytest.raises(ValueError):
            BevsRecord(
                startedAt=datetime(2026, 1, 5, 10, 0),
                currentStep=BevsStep.COLLECT_VALUES,
                domainIndex=1,
                assessments=swapped,
            )

    def test_score_bounds(self):
        with pytest.raises(ValueError):
            BevsAssessment(domain=BEVS_DOMAINS[0], value_statement="x", score=8)


def make_goal(**overrides) -> Goal:
    base = dict(
        goal_id="g-1",
        description="Practice guitar 10 minutes daily",
        measures=GoalMeasures(unit=GoalUnit.COUNT, weekly_target=7, completed_units=0),
        timeframe=GoalTimeframe(start_date=date(2026, 1, 5), duration_days=7),
        steps=("Keep the guitar on a stand",),
        obstacles=("Busy evenings",),
        progress=0,
        status=GoalStatus.ACTIVE,
        lastUpdated=datetime(2026, 1, 5, 9, 0),
    )
    base.update(overrides)
    return Goal(**base)


class TestGoal:
    def test_completed_requires_full_progress(self):
        make_goal(status=GoalStatus.COMPLETED, progress=100)
        with pytest.raises(ValueError):
            make_goal(status=GoalStatus.COMPLETED, progress=90)

    def test_progress_bounds(self):
        with pytest.raises(ValueError):
            make_goal(progress=101)
        with pytest.raises(ValueError):
            make_goal(progress=-1)

    def test_weekly_target_positive(self):
        with pytest.raises(ValueError):
            GoalMeasures(unit=GoalUnit.COUNT, weekly_target=0)


class TestUserProfile:
    def test_unknown_trait_rejected(self):
        with pytest.raises(ValueError):
            UserProfile(user_id="u", personality_traits={"Optimism": TraitLevel.HIGH})

    def test_exactly_five_trait_names_allowed(self):
        profile = UserProfile(
            user_id="u",
            personality_traits={name: TraitLevel.LOW for name in OCEAN_TRAITS},
        )
        assert set(profile.personality_traits) == set(OCEAN_TRAITS)

    def test_transient_name_never_serialized(self):
        profile = UserProfile(
            user_id="u",
            demographic=Demographic(name_transient="Miya", college_year="senior", major="CS"),
        )
        assert "Miya" not in profile.model_dump_json()
        assert "name_transient" not in profile.model_dump()["demographic"]

    def test_intro_complete_serialized_as_derived_field(self):
        profile = build_profile(set(INTRO_REQUIRED_FIELDS))
        assert profile.model_dump()["intro_complete"] is True
