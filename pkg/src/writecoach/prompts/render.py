"""Assemble the message bundle sent to the model for one submission."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CoachError
from ..session import SessionState, current_essay
from ..stages import Stage
from .templates import KNOWN_SLOTS, PromptTemplate

SLOT_LABELS = {
    "assignment_prompt": "ASSIGNMENT",
    "key_questions": "KEY QUESTIONS",
    "thesis": "THESIS",
    "outline": "OUTLINE",
    "essay": "ESSAY",
    "prior_feedback": "PRIOR FEEDBACK",
}


class UnknownSlot(CoachError):
    code = "unknown_slot"


@dataclass(frozen=True)
class ChatMessage:
    role: str  # system | user | assistant
    content: str


@dataclass(frozen=True)
class PromptBundle:
    system_message: str
    context_messages: tuple[ChatMessage, ...]
    user_message: str


def criteria_instruction(criteria: tuple[str, ...]) -> str | None:
    if not criteria:
        return None
    return "Assess the submission against these criteria: " + ", ".join(criteria) + "."


def _resolve_slot(slot: str, session: SessionState) -> str | None:
    if slot == "assignment_prompt":
        return session.assignment_prompt
    if slot == "key_questions":
        return session.latest_text(Stage.PRE_WRITING)
    if slot == "thesis":
        return session.latest_text(Stage.THESIS_STATEMENT)
    if slot == "outline":
        return session.latest_text(Stage.OUTLINE_BUILDING)
    if slot == "essay":
        return current_essay(session)
    if slot == "prior_feedback":
        return None  # feedback context travels via the memory window
    raise UnknownSlot(slot)


def context_block(labeled: list[tuple[str, str]]) -> str:
    """One labeled-sections block, e.g. ``ASSIGNMENT:\\n...\\n\\nTHESIS:\\n...``."""
    return "\n\n".join(f"{label}:\n{text}" for label, text in labeled)


def system_message_for(template: PromptTemplate) -> str:
    """Persona, limiters, criteria instruction, output format, validation
    directive, in that order, blank-line separated; absent parts skipped.
    Depends on the template alone, so it is stable per stage."""
    parts = [template.persona]
    if template.limiters:
        parts.append("\n".join(template.limiters))
    instruction = criteria_instruction(template.criteria)
    if instruction:
        parts.append(instruction)
    if template.output_format_instruction:
        parts.append(template.output_format_instruction)
    if template.validation_directive:
        parts.append(template.validation_directive)
    return "\n\n".join(parts)


def render(template: PromptTemplate, session: SessionState, user_input: str) -> PromptBundle:
    """Build the full bundle: system message, context block, user message.

    Absent artifacts are omitted from the context, never rendered as
    placeholders.
    """
    system_message = system_message_for(template)

    labeled: list[tuple[str, str]] = []
    for slot in template.context_slots:
        if slot not in KNOWN_SLOTS:
            raise UnknownSlot(slot)
        value = _resolve_slot(slot, session)
        if value is not None:
            labeled.append((SLOT_LABELS[slot], value))
    context = (ChatMessage("system", context_block(labeled)),) if labeled else ()

    return PromptBundle(
        system_message=system_message,
        context_messages=context,
        user_message=user_input,
    )
