"""Deterministic stand-in transports for offline runs and tests.

``ScriptedTransport`` answers chat requests without a network: it recognises
which stage a request belongs to by its system message (which is a pure
function of the stage template) and fabricates a response in the exact
format the feedback parser expects. Identical requests yield byte-identical
responses, which is what makes walkthrough transcripts freezable.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any

from ..feedback import (
    AnnotationClaim,
    ClaimCategory,
    FeedbackSection,
    Verdict,
    format_claim_line,
    render_report,
)
from ..prompts.render import system_message_for
from ..prompts.templates import template_for
from ..stages import Stage, stage_spec
from .client import TransportError

__all__ = ["ScriptedTransport", "FlakyTransport"]


def _tag(stage_name: str, user_input: str) -> str:
    digest = hashlib.sha256(f"{stage_name}\0{user_input}".encode("utf-8"))
    return digest.hexdigest()[:8]


def _pick_words(text: str, count: int) -> list[str]:
    """Choose up to ``count`` distinct words from the text, spread across it.

    Words come from ``str.split()`` so each is an exact substring of the
    original, which keeps fabricated claim quotes locatable.
    """
    words = [w for w in text.split() if any(ch.isalpha() for ch in w)]
    if not words:
        return []
    picks: list[str] = []
    step = max(1, len(words) // (count + 1))
    index = step
    while len(picks) < count and index < len(words):
        word = words[index]
        if word not in picks:
            picks.append(word)
        index += step
    if not picks:
        picks.append(words[0])
    return picks


def _claims_block(stage: Stage, user_input: str, tag: str) -> str | None:
    if stage is Stage.WORD_CHOICE_EVALUATION:
        category = ClaimCategory.WORD_CHOICE
        hint = "a more precise word"
    elif stage is Stage.GRAMMAR_CHECK:
        category = ClaimCategory.GRAMMAR
        hint = "a corrected form"
    else:
        return None
    lines = []
    for word in _pick_words(user_input, 2):
        lines.append(
            format_claim_line(
                AnnotationClaim(
                    quote=word,
                    category=category,
                    suggestion=f"{word} ({hint}, ref {tag})",
                    explanation=f"Flagged during the {stage.title} pass.",
                )
            )
        )
    if not lines:
        return None
    return "```\n" + "\n".join(lines) + "\n```"


def _stage_response(stage: Stage, user_input: str) -> str:
    spec = stage_spec(stage)
    tag = _tag(stage.title, user_input)
    sections = []
    for criterion in spec.criteria:
        sections.append(
            FeedbackSection(
                criterion=criterion,
                body=(
                    f"On {criterion}: the submission holds up in places but "
                    f"can be tightened. Revisit it with {criterion} in mind. "
                    f"[{tag}]"
                ),
            )
        )
    verdict = Verdict.READY if int(tag, 16) % 3 == 0 else Verdict.REVISE
    return render_report(
        stage_name=stage.title,
        sections=sections,
        verdict=verdict,
        claims_block=_claims_block(stage, user_input, tag),
    )


def _generic_response(user_input: str) -> str:
    tag = _tag("generic", user_input)
    return f"Noted. Keep the assignment's goal in view as you continue. [{tag}]"


def _chat_body(content: str) -> dict[str, Any]:
    # Extra fields mirror real provider payloads; readers must tolerate them.
    return {
        "object": "chat.completion",
        "choices": [
            {
                "index": 0,
                "message": {"role": "assistant", "content": content},
                "finish_reason": "stop",
            }
        ],
        "usage": {"prompt_tokens": 0, "completion_tokens": 0},
    }


@dataclass
class ScriptedTransport:
    """Transport that scripts responses instead of calling a provider.

    ``overrides`` maps ``(stage_title, user_input)`` to a canned response
    body, letting tests force a particular verdict or a malformed reply.
    Every request document is kept in ``requests`` for assertions.
    """

    overrides: dict[tuple[str, str], str] = field(default_factory=dict)
    requests: list[dict[str, Any]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._by_system = {
            system_message_for(template_for(stage)): stage for stage in Stage
        }

    def send(self, document: dict[str, Any]) -> tuple[int, dict[str, Any]]:
        self.requests.append(document)
        messages = document.get("messages", [])
        system = messages[0]["content"] if messages else ""
        user_input = messages[-1]["content"] if messages else ""
        stage = self._by_system.get(system)
        stage_title = stage.title if stage is not None else ""
        override = self.overrides.get((stage_title, user_input))
        if override is not None:
            return 200, _chat_body(override)
        if stage is None:
            return 200, _chat_body(_generic_response(user_input))
        return 200, _chat_body(_stage_response(stage, user_input))


@dataclass
class FlakyTransport:
    """Fault injector: replays queued outcomes, then defers to ``inner``.

    Each queued outcome is either an ``int`` HTTP status (returned with an
    empty body) or the string ``"error"`` (raises ``TransportError``).
    """

    inner: ScriptedTransport
    outcomes: list[int | str] = field(default_factory=list)
    attempts: int = 0

    def send(self, document: dict[str, Any]) -> tuple[int, dict[str, Any]]:
        self.attempts += 1
        if self.outcomes:
            outcome = self.outcomes.pop(0)
            if outcome == "error":
                raise TransportError("simulated connection failure")
            return int(outcome), {}
        return self.inner.send(document)
