"""The eleven writing stages and their static per-stage requirements.

Stages run strictly in ordinal order:

    PreWriting -> IdentifyingResources -> ThesisStatement -> OutlineBuilding
    -> IntroductionParagraph -> BodyParagraph -> BodyWrapUp
    -> ConclusionParagraph -> GeneralRevising -> WordChoiceEvaluation
    -> GrammarCheck

Every stage except IdentifyingResources requires a populated artifact slot
before the session may advance past it; IdentifyingResources is a hold
point the writer leaves by explicitly moving on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class InputKind(str, Enum):
    FREE_TEXT = "free_text"
    URL_LIST = "url_list"
    PARAGRAPH = "paragraph"
    NONE_REQUIRED = "none_required"


class Stage(Enum):
    PRE_WRITING = 0
    IDENTIFYING_RESOURCES = 1
    THESIS_STATEMENT = 2
    OUTLINE_BUILDING = 3
    INTRODUCTION_PARAGRAPH = 4
    BODY_PARAGRAPH = 5
    BODY_WRAP_UP = 6
    CONCLUSION_PARAGRAPH = 7
    GENERAL_REVISING = 8
    WORD_CHOICE_EVALUATION = 9
    GRAMMAR_CHECK = 10

    @property
    def ordinal(self) -> int:
        return self.value

    @property
    def title(self) -> str:
        """Wire/display name, e.g. ``BodyWrapUp``."""
        return "".join(part.capitalize() for part in self.name.split("_"))

    @classmethod
    def from_title(cls, title: str) -> "Stage":
        for stage in cls:
            if stage.title == title:
                return stage
        raise ValueError(f"unknown stage name: {title!r}")

    @property
    def next(self) -> "Stage | None":
        if self is Stage.GRAMMAR_CHECK:
            return None
        return Stage(self.value + 1)


FIRST_STAGE = Stage.PRE_WRITING
LAST_STAGE = Stage.GRAMMAR_CHECK


@dataclass(frozen=True)
class StageSpec:
    """Static requirements for one stage."""

    stage: Stage
    input_kind: InputKind
    min_tokens: int
    requires_submission_to_advance: bool
    criteria: tuple[str, ...]


# Token floors: 3 for free-text stages, 20 for paragraph stages, 0 otherwise.
# Criteria for ThesisStatement and GrammarCheck are the published coaching
# rubrics; the rest are authored rubric data and may be tuned.
_SPEC_TABLE: dict[Stage, StageSpec] = {
    spec.stage: spec
    for spec in (
        StageSpec(Stage.PRE_WRITING, InputKind.FREE_TEXT, 3, True,
                  ("alignment", "specificity")),
        StageSpec(Stage.IDENTIFYING_RESOURCES, InputKind.URL_LIST, 0, False,
                  ("reliability",)),
        StageSpec(Stage.THESIS_STATEMENT, InputKind.FREE_TEXT, 3, True,
                  ("off-topic", "logical", "strong")),
        StageSpec(Stage.OUTLINE_BUILDING, InputKind.FREE_TEXT, 3, True,
                  ("structure", "coverage")),
        StageSpec(Stage.INTRODUCTION_PARAGRAPH, InputKind.PARAGRAPH, 20, True,
                  ("hook", "context", "alignment")),
        StageSpec(Stage.BODY_PARAGRAPH, InputKind.PARAGRAPH, 20, True,
                  ("coherence", "cohesion", "clarity")),
        StageSpec(Stage.BODY_WRAP_UP, InputKind.NONE_REQUIRED, 0, True, ()),
        StageSpec(Stage.CONCLUSION_PARAGRAPH, InputKind.PARAGRAPH, 20, True,
                  ("summary", "closure")),
        StageSpec(Stage.GENERAL_REVISING, InputKind.PARAGRAPH, 20, True,
                  ("organization", "flow", "completeness")),
        StageSpec(Stage.WORD_CHOICE_EVALUATION, InputKind.NONE_REQUIRED, 0, True,
                  ("precision", "variety")),
        StageSpec(Stage.GRAMMAR_CHECK, InputKind.NONE_REQUIRED, 0, True,
                  ("spelling", "grammar", "punctuation")),
    )
}


def stage_spec(stage: Stage) -> StageSpec:
    """Return the static spec for ``stage``. Pure lookup."""
    return _SPEC_TABLE[stage]


def all_stages() -> tuple[Stage, ...]:
    return tuple(Stage)
