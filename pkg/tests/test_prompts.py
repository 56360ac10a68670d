"""Prompt assembly: slot substitution, history bounding, phase-scoped schemas."""

import json
from datetime import datetime

from goalcoach.domain import Phase, UserProfile
from goalcoach.prompts import (
    PHASE_TOOL_SCHEMAS,
    build_prompt,
    build_style_bundle,
    build_themes_bundle,
    format_history,
    profile_json,
)
from tests.test_patches import NOW, intro_sections, make_ids, profile_with_goal
from goalcoach.patches import ToolCallPatch, apply_patch


def fresh_profile() -> UserProfile:
    return UserProfile(user_id="u-1")


def completed_intro_profile() -> UserProfile:
    return apply_patch(
        fresh_profile(),
        ToolCallPatch(Phase.INTRODUCTION, intro_sections()),
        NOW,
        make_ids(),
    ).profile


class TestIntroductionBundle:
    def test_contains_checklist(self):
        bundle = build_prompt(Phase.INTRODUCTION, fresh_profile(), [], user_text="hi")
        assert bundle.phase is Phase.INTRODUCTION
        assert "REQUIRED SEQUENCE" in bundle.task_text
        assert "collect all 10 pieces" in bundle.task_text
        assert "Basic Info (5)" in bundle.task_text
        assert "Personality (5)" in bundle.task_text

    def test_no_markers_promised_in_intro(self):
        bundle = build_prompt(Phase.INTRODUCTION, fresh_profile(), [])
        assert "Do NOT include any phase markers yet" in bundle.task_text

    def test_history_slot_filled(self):
        history = [("coach", "Hello!"), ("user", "Hey there")]
        bundle = build_prompt(Phase.INTRODUCTION, fresh_profile(), history)
        assert "[history]" not in bundle.task_text
        assert "Coach: Hello!" in bundle.task_text
        assert "User: Hey there" in bundle.task_text


class TestValuesBundle:
    def test_step_and_domain_slots(self):
        bundle = build_prompt(
            Phase.VALUES_CHECK_IN,
            completed_intro_profile(),
            [],
            current_step="intro",
            domain_index=0,
        )
        assert "Current step: intro" in bundle.task_text
        assert "Current domain index: 0" in bundle.task_text
        assert "[currentStep]" not in bundle.task_text
        assert "[domainIndex]" not in bundle.task_text

    def test_directive_appended(self):
        bundle = build_prompt(
            Phase.VALUES_CHECK_IN,
            completed_intro_profile(),
            [],
            current_step="collect_scores",
            domain_index=2,
            directive="Ask for a 1-7 score.",
        )
        assert bundle.task_text.endswith("This turn: Ask for a 1-7 score.")
        assert "Current domain index: 2" in bundle.task_text


class TestGoalBundles:
    def test_profile_slot_filled_with_json(self):
        profile = profile_with_goal()
        bundle = build_prompt(Phase.GOAL_SETTING, profile, [])
        assert "[user_profile]" not in bundle.task_text
        assert '"user_id": "u-1"' in bundle.task_text

    def test_profile_json_never_carries_display_name(self):
        document = json.loads(profile_json(completed_intro_profile()))
        assert "name" not in document["demographic"]

    def test_create_schema_in_goal_setting(self):
        schema = build_prompt(Phase.GOAL_SETTING, profile_with_goal(), []).tool_schema
        fields = schema["parameters"]["properties"]["mental_health_goals"]["items"]["properties"]
        assert "measures" in fields and "obstacles" in fields
        assert "completed_units" not in fields and "goal_id" not in fields

    def test_update_schema_in_active_coaching(self):
        schema = build_prompt(Phase.ACTIVE_COACHING, profile_with_goal(), []).tool_schema
        fields = schema["parameters"]["properties"]["mental_health_goals"]["items"]["properties"]
        assert "completed_units" in fields and "goal_id" in fields
        assert "measures" not in fields and "obstacles" not in fields

    def test_phase_schema_map_is_total(self):
        for phase in Phase:
            assert phase in PHASE_TOOL_SCHEMAS
            bundle = build_prompt(phase, profile_with_goal(), [])
            assert bundle.tool_schema is PHASE_TOOL_SCHEMAS[phase]


class TestHistoryFormatting:
    def test_window_bounds_to_last_n(self):
        turns = [("user", f"message {i}") for i in range(30)]
        rendered = format_history(turns, window=20)
        assert "message 9" not in rendered
        assert "message 10" in rendered
        assert "message 29" in rendered

    def test_empty_history_placeholder(self):
        assert format_history([]) == "(no prior turns)"

    def test_persona_name_lands_in_system_text(self):
        bundle = build_prompt(
            Phase.INTRODUCTION, fresh_profile(), [], persona_name="Sage"
        )
        assert "You are Sage" in bundle.system_text


class TestAnalysisBundles:
    def test_style_bundle_shape(self):
        bundle = build_style_bundle(["hey!", "all good"], "avg words: 2.0")
        assert bundle.kind == "style"
        assert "Output ONLY JSON" in bundle.task_text
        assert "avg words: 2.0" in bundle.task_text
        assert bundle.user_text == "User: hey!\nUser: all good"

    def test_themes_bundle_shape(self):
        bundle = build_themes_bundle([("user", "exams are crushing me"), ("coach", "I hear you")])
        assert bundle.kind == "themes"
        assert "at most 5 themes" in bundle.task_text
        assert "User: exams are crushing me" in bundle.user_text
