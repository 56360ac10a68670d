"""Values-survey machine: step order, score validation, save payload shape."""

from datetime import datetime, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goalcoach.bevs import (
    BevsProgress,
    bevs_step,
    extract_score,
    is_affirmative,
    start_bevs,
)
from goalcoach.domain import BEVS_DOMAINS, BevsStep, ScoreOutOfRange

NOW = datetime(2026, 1, 5, 9, 10)


def walk(turns: list[str], now: datetime = NOW) -> tuple[BevsProgress, list]:
    progress = start_bevs(now)
    results = []
    for i, text in enumerate(turns):
        result = bevs_step(progress, text, now + timedelta(minutes=i))
        progress = result.progress
        results.append(result)
    return progress, results


FULL_WALK = [
    "Sure, let's start.",
    "I want to be someone who learns deeply and does work I am proud of.",
    "I would say a 3.",
    "Showing up for my friends matters a lot.",
    "A 5, I think.",
    "Taking care of my body and my stress.",
    "Probably a 4.",
    "Downtime that actually recharges me, like playing guitar.",
    "A 6 for sure.",
    "Yes, save it.",
]


class TestStepOrder:
    def test_intro_moves_to_collect_values(self):
        result = bevs_step(start_bevs(NOW), "yes let's start", NOW)
        assert result.progress.record.currentStep is BevsStep.COLLECT_VALUES
        assert result.progress.record.domainIndex == 0
        assert BEVS_DOMAINS[0] in result.directive

    def test_value_statement_moves_to_scores(self):
        progress, results = walk(FULL_WALK[:2])
        assert progress.record.currentStep is BevsStep.COLLECT_SCORES
        assert progress.pending_statement.startswith("I want to be someone")
        assert "1-7" in results[-1].directive

    def test_score_advances_domain(self):
        progress, _ = walk(FULL_WALK[:3])
        assert progress.record.currentStep is BevsStep.COLLECT_VALUES
        assert progress.record.domainIndex == 1
        assert len(progress.record.assessments) == 1
        assert progress.record.assessments[0].score == 3
        assert progress.record.assessments[0].domain == "Work/Studies"

    def test_fourth_score_reaches_confirm(self):
        progress, results = walk(FULL_WALK[:9])
        record = progress.record
        assert record.currentStep is BevsStep.CONFIRM
        assert record.domainIndex == 3
        assert [a.score for a in record.assessments] == [3, 5, 4, 6]
        # Confirm directive names the extremes.
        assert "Leisure" in results[-1].directive
        assert "Work/Studies" in results[-1].directive

    def test_confirm_yes_finishes_with_payload(self):
        progress, results = walk(FULL_WALK)
        record = progress.record
        assert record.currentStep is BevsStep.DONE
        assert record.completedAt is not None
        final = results[-1]
        assert final.finished
        bevs = final.save_sections["bevs"]
        assert bevs["currentStep"] == "done"
        assert bevs["domainIndex"] == 3
        assert bevs["domains"] == list(BEVS_DOMAINS)
        assert [a["score"] for a in bevs["assessments"]] == [3, 5, 4, 6]
        assert "[GOAL_SETTING_PHASE]" in final.directive

    def test_done_record_cannot_step(self):
        progress, _ = walk(FULL_WALK)
        with pytest.raises(ValueError):
            bevs_step(progress, "hello?", NOW)

    def test_in_progress_invariant_holds_throughout(self):
        progress = start_bevs(NOW)
        for text in FULL_WALK:
            record = progress.record
            if record.currentStep in (BevsStep.CONFIRM, BevsStep.DONE):
                assert len(record.assessments) == 4
            else:
                assert record.domainIndex == len(record.assessments)
            progress = bevs_step(progress, text, NOW).progress


class TestScoreHandling:
    def test_out_of_range_score_reprompts(self):
        turns = FULL_WALK[:2] + ["definitely an 8"]
        progress, results = walk(turns)
        assert results[-1].score_rejected
        assert progress.record.currentStep is BevsStep.COLLECT_SCORES
        assert progress.record.domainIndex == 0
        assert progress.pending_statement is not None
        assert "1 and 7" in results[-1].directive or "1-7" in results[-1].directive

    def test_non_numeric_answer_reprompts(self):
        turns = FULL_WALK[:2] + ["hmm, somewhere in the middle?"]
        progress, results = walk(turns)
        assert results[-1].score_rejected
        assert progress.record.currentStep is BevsStep.COLLECT_SCORES

    def test_recovery_after_rejection(self):
        turns = FULL_WALK[:2] + ["an 11", "ok then, 3"]
        progress, _ = walk(turns)
        assert progress.record.domainIndex == 1
        assert progress.record.assessments[0].score == 3

    def test_extract_score_first_number_wins(self):
        assert extract_score("I would say a 3.") == 3
        assert extract_score("maybe 6, or 7") == 6

    def test_extract_score_rejects_out_of_range(self):
        with pytest.raises(ScoreOutOfRange):
            extract_score("a solid 9")
        with pytest.raises(ScoreOutOfRange):
            extract_score("zero, honestly: 0")
        with pytest.raises(ScoreOutOfRange):
            extract_score("seven-ish")


class TestConfirmGate:
    def test_non_affirmative_stays_at_confirm(self):
        turns = FULL_WALK[:9] + ["hold on, can I change Relationships?"]
        progress, results = walk(turns)
        assert progress.record.currentStep is BevsStep.CONFIRM
        assert not results[-1].finished

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("Yes, save it.", True),
            ("yep!", True),
            ("Sounds good, go ahead", False),
            ("sure", True),
            ("hold on", False),
            ("nah, wait", False),
        ],
    )
    def test_is_affirmative(self, text, expected):
        # "Sounds good, go ahead" carries no listed keyword; the machine asks
        # again rather than guessing.
        assert is_affirmative(text) is expected


@given(
    scores=st.lists(st.integers(min_value=1, max_value=7), min_size=4, max_size=4),
    statements=st.lists(
        st.text(
            alphabet=st.characters(whitelist_categories=("Lu", "Ll"), whitelist_characters=" "),
            min_size=1,
            max_size=40,
        ).filter(str.strip),
        min_size=4,
        max_size=4,
    ),
)
@settings(max_examples=100, deadline=None)
def test_any_valid_walk_completes(scores, statements):
    turns = ["start"]
    for statement, score in zip(statements, scores):
        turns.append(statement)
        turns.append(f"I'd say {score}")
    turns.append("yes")
    progress, results = walk(turns)
    record = progress.record
    assert record.currentStep is BevsStep.DONE
    assert [a.domain for a in record.assessments] == list(BEVS_DOMAINS)
    assert [a.score for a in record.assessments] == scores
    assert results[-1].finished
