from __future__ import annotations

import pytest

from writecoach.stages import (
    FIRST_STAGE,
    LAST_STAGE,
    InputKind,
    Stage,
    all_stages,
    stage_spec,
)

EXPECTED_ORDER = [
    "PreWriting",
    "IdentifyingResources",
    "ThesisStatement",
    "OutlineBuilding",
    "IntroductionParagraph",
    "BodyParagraph",
    "BodyWrapUp",
    "ConclusionParagraph",
    "GeneralRevising",
    "WordChoiceEvaluation",
    "GrammarCheck",
]


def test_eleven_stages_in_fixed_order():
    assert [s.title for s in all_stages()] == EXPECTED_ORDER
    assert [s.ordinal for s in all_stages()] == list(range(11))


def test_first_and_last():
    assert FIRST_STAGE is Stage.PRE_WRITING
    assert LAST_STAGE is Stage.GRAMMAR_CHECK
    assert LAST_STAGE.next is None


def test_next_is_plus_one():
    for stage in all_stages():
        if stage.next is not None:
            assert stage.next.ordinal == stage.ordinal + 1


def test_from_title_round_trip():
    for stage in all_stages():
        assert Stage.from_title(stage.title) is stage
    with pytest.raises(ValueError):
        Stage.from_title("NotAStage")


def test_grammar_check_criteria_order():
    assert stage_spec(Stage.GRAMMAR_CHECK).criteria == ("spelling", "grammar", "punctuation")


def test_thesis_criteria():
    assert stage_spec(Stage.THESIS_STATEMENT).criteria == ("off-topic", "logical", "strong")


def test_resources_stage_is_a_hold_point():
    spec = stage_spec(Stage.IDENTIFYING_RESOURCES)
    assert spec.requires_submission_to_advance is False
    assert spec.input_kind is InputKind.URL_LIST


def test_body_paragraph_floor():
    spec = stage_spec(Stage.BODY_PARAGRAPH)
    assert spec.input_kind is InputKind.PARAGRAPH
    assert spec.min_tokens == 20


def test_token_floors_by_kind():
    for stage in all_stages():
        spec = stage_spec(stage)
        if spec.input_kind is InputKind.FREE_TEXT:
            assert spec.min_tokens == 3
        elif spec.input_kind is InputKind.PARAGRAPH:
            assert spec.min_tokens == 20
        else:
            assert spec.min_tokens == 0


def test_none_required_stages():
    kinds = {s: stage_spec(s).input_kind for s in all_stages()}
    assert [s for s, k in kinds.items() if k is InputKind.NONE_REQUIRED] == [
        Stage.BODY_WRAP_UP,
        Stage.WORD_CHOICE_EVALUATION,
        Stage.GRAMMAR_CHECK,
    ]
