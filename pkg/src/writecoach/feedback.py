"""Turn raw model output into structured, criteria-ordered feedback.

The model is instructed to answer in ``### <Criterion>`` sections with a
trailing ``VERDICT:`` line, and to list word/grammar findings inside a fenced
block of ``QUOTE | CATEGORY | SUGGESTION`` lines. This module parses that
contract back out, leniently where survivable (unknown headers fold into the
surrounding section, malformed claim lines are counted and skipped) and
strictly where the coaching promise depends on it (criteria present, in
order).

Annotation offsets are Unicode scalar (Python ``str``) indices; a span never
splits a scalar value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import CoachError
from .stages import StageSpec


class FeedbackError(CoachError):
    """A model response that cannot be read as a criteria-sectioned report."""

    code = "feedback_error"


class EmptyResponse(FeedbackError):
    code = "empty_response"


class MissingCriterion(FeedbackError):
    code = "missing_criterion"

    def __init__(self, criterion: str):
        super().__init__(f"feedback is missing the {criterion!r} section")
        self.criterion = criterion


class OutOfOrderCriteria(FeedbackError):
    code = "out_of_order_criteria"


class Verdict(str, Enum):
    READY = "ready"
    REVISE = "revise"


class ClaimCategory(str, Enum):
    GRAMMAR = "grammar"
    WORD_CHOICE = "word_choice"


@dataclass(frozen=True)
class FeedbackSection:
    criterion: str
    body: str


@dataclass(frozen=True)
class FeedbackReport:
    stage_name: str
    sections: tuple[FeedbackSection, ...]
    verdict: Verdict
    raw: str


@dataclass(frozen=True)
class AnnotationClaim:
    quote: str
    category: ClaimCategory
    suggestion: str
    explanation: str | None = None


@dataclass(frozen=True)
class Annotation:
    start: int
    end: int
    category: ClaimCategory
    suggestion: str
    explanation: str | None = None


@dataclass(frozen=True)
class ClaimExtraction:
    claims: tuple[AnnotationClaim, ...]
    skipped: int


_HEADER_RE = re.compile(r"^###\s+(.+?)\s*$")
_VERDICT_RE = re.compile(r"^\s*VERDICT:\s*(ready|revise)\s*$", re.IGNORECASE)


def _canon(name: str) -> str:
    """Normalize a criterion name for matching: case, punctuation, separators."""
    return re.sub(r"[\s_]+", "-", name.strip().strip(":").lower())


def parse_feedback(raw: str, spec: StageSpec) -> FeedbackReport:
    """Split ``raw`` into the stage's criteria sections, in the stage's order.

    Raises MissingCriterion when a required section is absent,
    OutOfOrderCriteria when sections are permuted or duplicated, and
    EmptyResponse on blank input. A missing trailing verdict line defaults
    to ``revise``.
    """
    if not raw.strip():
        raise EmptyResponse("model returned no text")

    lines = raw.split("\n")

    verdict = Verdict.REVISE
    body_end = len(lines)
    for i in range(len(lines) - 1, -1, -1):
        if not lines[i].strip():
            continue
        match = _VERDICT_RE.match(lines[i])
        if match:
            verdict = Verdict(match.group(1).lower())
            body_end = i
        break

    wanted = {_canon(c): c for c in spec.criteria}
    found: list[str] = []
    bodies: dict[int, list[str]] = {}
    current: int | None = None
    for line in lines[:body_end]:
        header = _HEADER_RE.match(line)
        if header and _canon(header.group(1)) in wanted:
            found.append(wanted[_canon(header.group(1))])
            current = len(found) - 1
            bodies[current] = []
            continue
        if current is not None:
            bodies[current].append(line)

    if found != list(spec.criteria):
        for criterion in spec.criteria:
            if criterion not in found:
                raise MissingCriterion(criterion)
        raise OutOfOrderCriteria(f"expected {list(spec.criteria)}, found {found}")

    sections = tuple(
        FeedbackSection(criterion=found[i], body="\n".join(bodies[i]).strip("\n"))
        for i in range(len(found))
    )
    return FeedbackReport(
        stage_name=spec.stage.title, sections=sections, verdict=verdict, raw=raw
    )


def render_report(
    stage_name: str, sections: tuple[FeedbackSection, ...] | list[FeedbackSection],
    verdict: Verdict, claims_block: str | None = None,
) -> str:
    """Render sections back to the wire text form (inverse of parse_feedback)."""
    chunks = [f"### {s.criterion.capitalize()}\n{s.body}" for s in sections]
    if claims_block:
        chunks.append(claims_block)
    chunks.append(f"VERDICT: {verdict.value}")
    return "\n\n".join(chunks)


_CLAIM_LINE_RE = re.compile(
    r'^\s*QUOTE:\s*"((?:[^"\\]|\\.)*)"'
    r'\s*\|\s*CATEGORY:\s*(grammar|word[-_]choice)'
    r'\s*\|\s*SUGGESTION:\s*"((?:[^"\\]|\\.)*)"'
    r'(?:\s*\|\s*EXPLANATION:\s*"((?:[^"\\]|\\.)*)")?\s*$',
    re.IGNORECASE,
)
_FENCE_RE = re.compile(r"^\s*```")


def _unescape(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text)


def format_claim_line(claim: AnnotationClaim) -> str:
    """Render one claim in the fenced-block line format (used by fixtures)."""

    def esc(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"')

    category = "grammar" if claim.category is ClaimCategory.GRAMMAR else "word-choice"
    line = f'QUOTE: "{esc(claim.quote)}" | CATEGORY: {category} | SUGGESTION: "{esc(claim.suggestion)}"'
    if claim.explanation is not None:
        line += f' | EXPLANATION: "{esc(claim.explanation)}"'
    return line


def extract_claims(raw: str) -> ClaimExtraction:
    """Collect claim lines from fenced blocks; malformed lines are skipped.

    Never raises: a response with no block yields an empty extraction.
    """
    claims: list[AnnotationClaim] = []
    skipped = 0
    in_block = False
    for line in raw.split("\n"):
        if _FENCE_RE.match(line):
            in_block = not in_block
            continue
        if not in_block or not line.strip():
            continue
        match = _CLAIM_LINE_RE.match(line)
        if not match:
            skipped += 1
            continue
        quote = _unescape(match.group(1))
        if not quote:
            skipped += 1
            continue
        category = (
            ClaimCategory.GRAMMAR
            if match.group(2).lower() == "grammar"
            else ClaimCategory.WORD_CHOICE
        )
        explanation = _unescape(match.group(4)) if match.group(4) is not None else None
        claims.append(
            AnnotationClaim(
                quote=quote,
                category=category,
                suggestion=_unescape(match.group(3)),
                explanation=explanation,
            )
        )
    return ClaimExtraction(claims=tuple(claims), skipped=skipped)


def _occurrences(essay: str, quote: str) -> list[int]:
    """All start offsets of ``quote`` in ``essay``, including overlapping ones."""
    starts = []
    at = essay.find(quote)
    while at != -1:
        starts.append(at)
        at = essay.find(quote, at + 1)
    return starts


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def locate(
    essay: str, claims: list[AnnotationClaim] | tuple[AnnotationClaim, ...]
) -> tuple[list[Annotation], list[AnnotationClaim]]:
    """Map quoted claims to exact character spans in the essay.

    Claims are processed in order; each takes the leftmost occurrence of its
    quote that does not overlap an already-placed span. A claim with no free
    occurrence goes to ``unmatched``, except that a grammar claim whose quote
    sits exactly on a word-choice span upgrades that span in place
    (correctness beats style). Deterministic; depends only on claim order.
    """
    placed: list[Annotation] = []
    unmatched: list[AnnotationClaim] = []
    for claim in claims:
        starts = _occurrences(essay, claim.quote)
        span = None
        for start in starts:
            candidate = (start, start + len(claim.quote))
            if not any(_overlaps(candidate, (a.start, a.end)) for a in placed):
                span = candidate
                break
        if span is not None:
            placed.append(
                Annotation(span[0], span[1], claim.category, claim.suggestion, claim.explanation)
            )
            continue
        merged = False
        if claim.category is ClaimCategory.GRAMMAR:
            for start in starts:
                candidate = (start, start + len(claim.quote))
                for i, a in enumerate(placed):
                    if (a.start, a.end) == candidate and a.category is ClaimCategory.WORD_CHOICE:
                        placed[i] = Annotation(
                            a.start, a.end, ClaimCategory.GRAMMAR,
                            claim.suggestion, claim.explanation,
                        )
                        merged = True
                        break
                if merged:
                    break
        if not merged:
            unmatched.append(claim)
    placed.sort(key=lambda a: (a.start, a.end))
    return placed, unmatched
