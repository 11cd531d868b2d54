from __future__ import annotations

import pytest

from writecoach.prompts.templates import (
    KNOWN_SLOTS,
    NON_GENERATION_LIMITER,
    PERSONA_PHRASE,
    PromptTemplate,
    dump_template,
    parse_template,
    template_for,
)
from writecoach.stages import Stage, all_stages, stage_spec

PARAGRAPH_FEEDBACK_STAGES = (
    Stage.INTRODUCTION_PARAGRAPH,
    Stage.BODY_PARAGRAPH,
    Stage.CONCLUSION_PARAGRAPH,
    Stage.GENERAL_REVISING,
)


def test_all_eleven_templates_load():
    for stage in all_stages():
        template = template_for(stage)
        assert template.stage is stage


def test_every_persona_is_a_writing_coach():
    for stage in all_stages():
        assert PERSONA_PHRASE in template_for(stage).persona


def test_paragraph_stages_carry_verbatim_limiter():
    for stage in PARAGRAPH_FEEDBACK_STAGES:
        assert NON_GENERATION_LIMITER in template_for(stage).limiters


def test_criteria_match_stage_table():
    for stage in all_stages():
        assert template_for(stage).criteria == stage_spec(stage).criteria


def test_grammar_check_output_order_sentence():
    template = template_for(Stage.GRAMMAR_CHECK)
    assert (
        "Provide your response on the criteria in this order: "
        "spelling, grammar, and punctuation."
    ) in template.output_format_instruction


def test_thesis_template_names_published_criteria():
    template = template_for(Stage.THESIS_STATEMENT)
    text = dump_template(template)
    assert "off-topic" in text and "logical" in text and "strong" in text


def test_paragraph_stages_carry_validation_directive():
    directive = (
        "If the user does not type any paragraph or just random text, "
        "please direct them to type the paragraph."
    )
    for stage in PARAGRAPH_FEEDBACK_STAGES:
        assert template_for(stage).validation_directive == directive


def test_round_trip_parse_dump():
    for stage in all_stages():
        template = template_for(stage)
        assert parse_template(dump_template(template)) == template


def test_context_slots_are_known():
    for stage in all_stages():
        for slot in template_for(stage).context_slots:
            assert slot in KNOWN_SLOTS


def test_template_for_is_cached():
    assert template_for(Stage.PRE_WRITING) is template_for(Stage.PRE_WRITING)


def test_parse_rejects_wrong_criteria():
    template = template_for(Stage.GRAMMAR_CHECK)
    text = dump_template(template).replace("punctuation", "penmanship")
    with pytest.raises(Exception):
        parse_template(text)


def test_parse_rejects_missing_persona():
    template = template_for(Stage.PRE_WRITING)
    text = dump_template(template).replace("Act as a writing coach", "Act as a pirate")
    with pytest.raises(Exception):
        parse_template(text)
