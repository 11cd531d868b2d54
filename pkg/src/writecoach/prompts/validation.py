"""Deterministic pre-model input validation.

A cheap machine-checkable floor beneath the model-side validation directive:
the text must be non-empty, meet the stage's token floor, and be at least
half alphabetic (over non-whitespace characters) so keyboard mash and digit
strings get redirected without a provider round trip.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..stages import InputKind, StageSpec

MIN_ALPHA_RATIO = 0.5

_EXPECTED_INPUT = {
    InputKind.FREE_TEXT: "your response for this stage",
    InputKind.URL_LIST: "your resource links, one per line",
    InputKind.PARAGRAPH: "your paragraph",
    InputKind.NONE_REQUIRED: "nothing",
}


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    reason: str | None = None  # empty | too_short | low_alpha_ratio
    redirect_message: str | None = None

    @classmethod
    def ok(cls) -> "ValidationResult":
        return cls(valid=True)

    @classmethod
    def rejected(cls, reason: str, redirect_message: str) -> "ValidationResult":
        return cls(valid=False, reason=reason, redirect_message=redirect_message)


def _redirect(reason: str, spec: StageSpec) -> str:
    expected = _EXPECTED_INPUT[spec.input_kind]
    if reason == "empty":
        return f"That submission looks empty. Please type {expected}."
    if reason == "too_short":
        return (
            f"That submission is too short to coach on. Please type {expected} "
            f"of at least {spec.min_tokens} words."
        )
    return f"That doesn't look like writing I can coach on. Please type {expected}."


def validate_input(text: str, spec: StageSpec) -> ValidationResult:
    """Pure check: non-empty, token floor, and >=50% alphabetic characters."""
    trimmed = text.strip()
    if not trimmed:
        return ValidationResult.rejected("empty", _redirect("empty", spec))
    tokens = trimmed.split()
    if len(tokens) < spec.min_tokens:
        return ValidationResult.rejected("too_short", _redirect("too_short", spec))
    glyphs = [ch for ch in trimmed if not ch.isspace()]
    alpha = sum(1 for ch in glyphs if ch.isalpha())
    if alpha / len(glyphs) < MIN_ALPHA_RATIO:
        return ValidationResult.rejected(
            "low_alpha_ratio", _redirect("low_alpha_ratio", spec)
        )
    return ValidationResult.ok()
