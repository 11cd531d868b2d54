"""Session state for one writing task: stage position plus per-stage artifacts.

All transition helpers are pure: they take a state and return a new state,
never mutating their argument. Timestamps and ids are injectable so a
persisted action log can be replayed to an identical state.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from .errors import CoachError
from .stages import FIRST_STAGE, InputKind, Stage, stage_spec


class EmptyAssignment(CoachError):
    code = "empty_assignment"


class SessionCompleted(CoachError):
    code = "session_completed"


class MissingSubmission(CoachError):
    code = "missing_submission"


class SubmissionNotAllowed(CoachError):
    """Raised when submitting at a stage that takes no user input."""

    code = "submission_not_allowed"


class MissingSection(CoachError):
    code = "missing_section"

    def __init__(self, section: str):
        super().__init__(f"essay section missing: {section}")
        self.section = section


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class ArtifactSlot:
    """Latest submission plus all prior ones for a single stage.

    ``history`` preserves submission order; ``latest`` is the most recent.
    For the body stage, history-plus-latest is the paragraph list itself.
    """

    latest: str
    history: tuple[str, ...] = ()

    @property
    def revision_count(self) -> int:
        return len(self.history) + 1

    @property
    def all_submissions(self) -> tuple[str, ...]:
        return self.history + (self.latest,)

    def push(self, text: str) -> "ArtifactSlot":
        return ArtifactSlot(latest=text, history=self.history + (self.latest,))


@dataclass(frozen=True)
class SessionState:
    session_id: str
    user_id: str
    assignment_prompt: str
    current: Stage
    artifacts: dict[Stage, ArtifactSlot] = field(default_factory=dict)
    created_at: datetime = field(default_factory=_utcnow)
    updated_at: datetime = field(default_factory=_utcnow)
    completed: bool = False

    def slot(self, stage: Stage) -> ArtifactSlot | None:
        return self.artifacts.get(stage)

    def latest_text(self, stage: Stage) -> str | None:
        slot = self.artifacts.get(stage)
        return slot.latest if slot else None

    def _with_slot(self, stage: Stage, slot: ArtifactSlot, now: datetime) -> "SessionState":
        updated = dict(self.artifacts)
        updated[stage] = slot
        return replace(self, artifacts=updated, updated_at=now)


def new_session(
    user_id: str,
    assignment_prompt: str,
    *,
    session_id: str | None = None,
    now: datetime | None = None,
) -> SessionState:
    """Start a session at the first stage with the assignment prompt stored."""
    if not assignment_prompt.strip():
        raise EmptyAssignment("assignment prompt must not be empty")
    now = now or _utcnow()
    return SessionState(
        session_id=session_id or uuid.uuid4().hex,
        user_id=user_id,
        assignment_prompt=assignment_prompt,
        current=FIRST_STAGE,
        created_at=now,
        updated_at=now,
    )


def record_submission(state: SessionState, text: str, *, now: datetime | None = None) -> SessionState:
    """Store ``text`` in the current stage's slot. Never changes the stage.

    Callers are responsible for validating the text first; this helper only
    enforces the structural rules (session open, stage accepts input).
    """
    if state.completed:
        raise SessionCompleted(f"session {state.session_id} is already complete")
    spec = stage_spec(state.current)
    if spec.input_kind is InputKind.NONE_REQUIRED:
        raise SubmissionNotAllowed(f"{state.current.title} takes no submission")
    now = now or _utcnow()
    slot = state.slot(state.current)
    slot = slot.push(text) if slot else ArtifactSlot(latest=text)
    return state._with_slot(state.current, slot, now)


def record_system_artifact(
    state: SessionState, stage: Stage, text: str, *, now: datetime | None = None
) -> SessionState:
    """Store system-produced content (assembled essay, analyzed essay copy)."""
    if stage.ordinal > state.current.ordinal:
        raise MissingSubmission(f"stage {stage.title} not reached yet")
    now = now or _utcnow()
    slot = state.slot(stage)
    slot = slot.push(text) if slot else ArtifactSlot(latest=text)
    return state._with_slot(stage, slot, now)


def advance(state: SessionState, *, now: datetime | None = None) -> SessionState:
    """Move to the next stage; past the last stage the session completes.

    Never touches artifact slots.
    """
    if state.completed:
        raise SessionCompleted(f"session {state.session_id} is already complete")
    spec = stage_spec(state.current)
    if spec.requires_submission_to_advance and state.slot(state.current) is None:
        raise MissingSubmission(f"{state.current.title} needs a submission first")
    now = now or _utcnow()
    nxt = state.current.next
    if nxt is None:
        return replace(state, completed=True, updated_at=now)
    return replace(state, current=nxt, updated_at=now)


def assemble_essay(state: SessionState, *, now: datetime | None = None) -> tuple[SessionState, str]:
    """Join intro, body paragraphs, and conclusion (when present) into one essay.

    Sections are separated by exactly one blank line. The result is stored as
    the wrap-up stage's artifact and also returned.
    """
    if state.current.ordinal < Stage.BODY_WRAP_UP.ordinal:
        raise MissingSubmission("essay cannot be assembled before the wrap-up stage")
    intro = state.latest_text(Stage.INTRODUCTION_PARAGRAPH)
    if intro is None:
        raise MissingSection("Introduction")
    body = state.slot(Stage.BODY_PARAGRAPH)
    if body is None:
        raise MissingSection("Body")
    parts = [intro, *body.all_submissions]
    conclusion = state.latest_text(Stage.CONCLUSION_PARAGRAPH)
    if conclusion is not None:
        parts.append(conclusion)
    essay = "\n\n".join(parts)
    now = now or _utcnow()
    slot = state.slot(Stage.BODY_WRAP_UP)
    slot = slot.push(essay) if slot else ArtifactSlot(latest=essay)
    return state._with_slot(Stage.BODY_WRAP_UP, slot, now), essay


def current_essay(state: SessionState) -> str | None:
    """Most recent full-essay artifact: the revised essay when present,
    otherwise the assembled wrap-up essay."""
    return state.latest_text(Stage.GENERAL_REVISING) or state.latest_text(Stage.BODY_WRAP_UP)
