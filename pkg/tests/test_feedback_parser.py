from __future__ import annotations

import random

import pytest

from writecoach.feedback import (
    EmptyResponse,
    FeedbackSection,
    MissingCriterion,
    OutOfOrderCriteria,
    Verdict,
    parse_feedback,
    render_report,
)
from writecoach.stages import Stage, all_stages, stage_spec

GRAMMAR = stage_spec(Stage.GRAMMAR_CHECK)
THESIS = stage_spec(Stage.THESIS_STATEMENT)

GRAMMAR_TEXT = """### Spelling
Two words are misspelled.

### Grammar
Subject-verb agreement slips in sentence two.

### Punctuation
A comma splice joins the last two clauses.

VERDICT: revise"""


def test_parses_sections_in_order():
    report = parse_feedback(GRAMMAR_TEXT, GRAMMAR)
    assert [s.criterion for s in report.sections] == ["spelling", "grammar", "punctuation"]
    assert report.verdict is Verdict.REVISE
    assert report.raw == GRAMMAR_TEXT


def test_section_bodies_captured():
    report = parse_feedback(GRAMMAR_TEXT, GRAMMAR)
    assert report.sections[0].body == "Two words are misspelled."
    assert report.sections[2].body == "A comma splice joins the last two clauses."


def test_reordered_sections_rejected():
    swapped = GRAMMAR_TEXT.replace("### Grammar", "### TEMP").replace(
        "### Punctuation", "### Grammar"
    ).replace("### TEMP", "### Punctuation")
    with pytest.raises(OutOfOrderCriteria):
        parse_feedback(swapped, GRAMMAR)


def test_deleted_section_rejected():
    chopped = GRAMMAR_TEXT.replace("### Grammar\nSubject-verb agreement slips in sentence two.\n\n", "")
    with pytest.raises(MissingCriterion) as err:
        parse_feedback(chopped, GRAMMAR)
    assert err.value.criterion == "grammar"


def test_missing_verdict_defaults_to_revise():
    text = GRAMMAR_TEXT.replace("\n\nVERDICT: revise", "")
    assert parse_feedback(text, GRAMMAR).verdict is Verdict.REVISE


def test_ready_verdict():
    text = GRAMMAR_TEXT.replace("VERDICT: revise", "VERDICT: ready")
    assert parse_feedback(text, GRAMMAR).verdict is Verdict.READY


def test_verdict_case_insensitive():
    text = GRAMMAR_TEXT.replace("VERDICT: revise", "VERDICT: Ready")
    assert parse_feedback(text, GRAMMAR).verdict is Verdict.READY


def test_empty_response_rejected():
    with pytest.raises(EmptyResponse):
        parse_feedback("   \n  ", GRAMMAR)


def test_header_matching_tolerates_case_and_separators():
    text = GRAMMAR_TEXT.replace("### Spelling", "### SPELLING").replace(
        "### Punctuation", "###   punctuation  "
    )
    report = parse_feedback(text, GRAMMAR)
    assert [s.criterion for s in report.sections] == ["spelling", "grammar", "punctuation"]


def test_unknown_headers_fold_into_previous_body():
    text = GRAMMAR_TEXT.replace(
        "Subject-verb agreement slips in sentence two.",
        "Subject-verb agreement slips in sentence two.\n\n### Extra Notes\nKeep reading aloud.",
    )
    report = parse_feedback(text, GRAMMAR)
    assert "Extra Notes" in report.sections[1].body


def test_hyphenated_criterion_headers():
    text = """### Off-topic
On topic throughout.

### Logical
The claim follows from the reasons.

### Strong
Specific and arguable.

VERDICT: ready"""
    report = parse_feedback(text, THESIS)
    assert [s.criterion for s in report.sections] == ["off-topic", "logical", "strong"]


def _random_report(rng: random.Random, spec):
    sections = [
        FeedbackSection(
            criterion=c,
            body="\n".join(
                "line %d for %s %s" % (i, c, rng.choice(["alpha", "beta", "gamma"]))
                for i in range(rng.randint(1, 4))
            ),
        )
        for c in spec.criteria
    ]
    verdict = rng.choice([Verdict.READY, Verdict.REVISE])
    return sections, verdict


def test_round_trip_100_generated_reports():
    rng = random.Random(2024)
    specs = [stage_spec(s) for s in all_stages() if stage_spec(s).criteria]
    for i in range(100):
        spec = specs[i % len(specs)]
        sections, verdict = _random_report(rng, spec)
        raw = render_report(spec.stage.title, sections, verdict)
        report = parse_feedback(raw, spec)
        assert [s.criterion for s in report.sections] == list(spec.criteria)
        assert [s.body for s in report.sections] == [s.body for s in sections]
        assert report.verdict is verdict


def test_raw_preserved_verbatim():
    report = parse_feedback(GRAMMAR_TEXT, GRAMMAR)
    assert report.raw == GRAMMAR_TEXT
