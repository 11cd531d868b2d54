"""Session orchestrator: per-task locking, persistence, and stage side effects.

This is the layer between the HTTP handlers and the pure stage functions.
Every mutating call persists its results (messages plus snapshot) in one
atomic storage write before returning. Stages that need system-produced
content get it here, on entry:

  * BodyWrapUp — the essay is assembled from the stored sections.
  * GeneralRevising — the current essay is copied in as the starting draft,
    so a satisfied writer can advance without retyping it.
  * WordChoiceEvaluation / GrammarCheck — the current essay is analyzed and
    the report stored; the analyzed copy becomes the stage artifact.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime

from .engine import ProviderFailure, SessionEngine, ValidationRejected
from .errors import CoachError
from .feedback import (
    Annotation,
    AnnotationClaim,
    FeedbackReport,
    FeedbackSection,
    Verdict,
    extract_claims,
    locate,
    parse_feedback,
    render_report,
)
from .prompts.validation import validate_input
from .resources import ReliabilityAssessment, Tier, evaluate_all
from .session import (
    SessionState,
    advance,
    assemble_essay,
    current_essay,
    new_session,
    record_submission,
    record_system_artifact,
)
from .stages import Stage, stage_spec
from .storage.base import Store, Turn
from .storage.records import MessageRecord, UserRecord


class Busy(CoachError):
    """Another mutation is in flight for the same task."""

    code = "busy"


class Forbidden(CoachError):
    """The task exists but belongs to a different user."""

    code = "forbidden"


_ANALYSIS_STAGES = (Stage.WORD_CHOICE_EVALUATION, Stage.GRAMMAR_CHECK)

_RATIONALE_PROMPT = (
    "Act as a writing coach. A resource link has already been rated for "
    "reliability. In one or two sentences, explain to the writer what the "
    "rating means for their research. Do not change the rating."
)


@dataclass(frozen=True)
class SubmitResult:
    state: SessionState
    report: FeedbackReport
    annotations: tuple[Annotation, ...]
    unmatched: tuple[AnnotationClaim, ...]


@dataclass(frozen=True)
class MessageView:
    seq: int
    role: str
    stage_name: str
    content: str
    created_at: datetime
    annotations: tuple[Annotation, ...] = ()
    unmatched: tuple[AnnotationClaim, ...] = ()


def _split_urls(text: str) -> list[str]:
    parts = [p.strip() for chunk in text.split(",") for p in chunk.split()]
    return [p for p in parts if p]


def _resource_report(assessments: list[ReliabilityAssessment]) -> str:
    lines = []
    for i, a in enumerate(assessments, start=1):
        line = f"{i}. {a.url} — {a.tier.value} ({', '.join(a.reasons)})"
        if a.rationale:
            line += f" — {a.rationale}"
        lines.append(line)
    usable = any(a.tier in (Tier.HIGH, Tier.MEDIUM) for a in assessments)
    verdict = Verdict.READY if usable else Verdict.REVISE
    section = FeedbackSection(criterion="reliability", body="\n".join(lines))
    return render_report(
        stage_name=Stage.IDENTIFYING_RESOURCES.title,
        sections=[section],
        verdict=verdict,
    )


class WritingCoach:
    """Facade the HTTP layer talks to. One instance per process."""

    def __init__(self, store: Store, engine: SessionEngine, *, rationales: bool = False):
        self._store = store
        self._engine = engine
        self._rationales = rationales
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # -- users --------------------------------------------------------------
    def register(self, username: str, password: str) -> UserRecord:
        return self._store.create_user(username, password)

    def login(self, username: str, password: str) -> str:
        return self._store.authenticate(username, password)

    # -- task lifecycle -----------------------------------------------------
    def create_task(self, user_id: str, assignment_prompt: str) -> SessionState:
        state = new_session(user_id, assignment_prompt)
        self._store.create_conversation(state)
        return state

    def get_task(self, task_id: str, user_id: str) -> SessionState:
        return self._owned_state(task_id, user_id)

    def submit(self, task_id: str, user_id: str, text: str) -> SubmitResult:
        with self._exclusive(task_id):
            state = self._owned_state(task_id, user_id)
            if state.current is Stage.IDENTIFYING_RESOURCES and not state.completed:
                return self._submit_resources(state, text)
            return self._submit_via_model(state, text)

    def advance_task(self, task_id: str, user_id: str) -> SessionState:
        with self._exclusive(task_id):
            state = self._owned_state(task_id, user_id)
            new_state = advance(state)
            turns: list[Turn] = []
            if not new_state.completed:
                new_state, turns = self._on_enter(new_state)
            self._store.append_interaction(task_id, turns, new_state)
            return new_state

    def evaluate_resources(
        self, task_id: str, user_id: str, urls: list[str]
    ) -> list[ReliabilityAssessment]:
        """Stateless tier lookup for the resource form; persists nothing.
        Chosen links enter the record via submit at the resources stage."""
        self._owned_state(task_id, user_id)
        return evaluate_all(urls, rationale_fn=self._rationale_fn())

    def messages(
        self, task_id: str, user_id: str, stage: Stage | None = None
    ) -> list[MessageView]:
        state = self._owned_state(task_id, user_id)
        records = self._store.load_messages(task_id, stage)
        return [self._view(record, state, records) for record in records]

    # -- internals ------------------------------------------------------------
    def _lock_for(self, task_id: str) -> threading.Lock:
        with self._locks_guard:
            lock = self._locks.get(task_id)
            if lock is None:
                lock = self._locks[task_id] = threading.Lock()
            return lock

    @contextmanager
    def _exclusive(self, task_id: str):
        lock = self._lock_for(task_id)
        if not lock.acquire(blocking=False):
            raise Busy(f"task {task_id} has a request in flight")
        try:
            yield
        finally:
            lock.release()

    def _owned_state(self, task_id: str, user_id: str) -> SessionState:
        conversation = self._store.get_conversation(task_id)
        if conversation.user_id != user_id:
            raise Forbidden(f"task {task_id} belongs to another user")
        return self._store.load_snapshot(task_id)

    def _rationale_fn(self):
        if not self._rationales:
            return None

        def rationale(assessment: ReliabilityAssessment) -> str:
            question = (
                f"The link {assessment.url} was rated {assessment.tier.value} "
                f"(rules: {', '.join(assessment.reasons)})."
            )
            return self._engine.rationale(_RATIONALE_PROMPT, question)

        return rationale

    def _submit_resources(self, state: SessionState, text: str) -> SubmitResult:
        spec = stage_spec(state.current)
        validation = validate_input(text, spec)
        if not validation.valid:
            raise ValidationRejected(validation)
        assessments = evaluate_all(_split_urls(text), rationale_fn=self._rationale_fn())
        raw = _resource_report(assessments)
        report = parse_feedback(raw, spec)
        new_state = record_submission(state, text)
        self._store.append_interaction(
            state.session_id,
            [("user", state.current, text), ("assistant", state.current, raw)],
            new_state,
        )
        return SubmitResult(state=new_state, report=report, annotations=(), unmatched=())

    def _submit_via_model(self, state: SessionState, text: str) -> SubmitResult:
        history = self._store.load_messages(state.session_id)
        try:
            outcome = self._engine.submit(state, text, history)
        except ProviderFailure as failure:
            # The writer's work is kept even though feedback is absent.
            self._store.append_interaction(
                state.session_id,
                [("user", state.current, text)],
                failure.state,
            )
            raise
        self._store.append_interaction(
            state.session_id,
            [
                ("user", state.current, text),
                ("assistant", state.current, outcome.report.raw),
            ],
            outcome.state,
        )
        return SubmitResult(
            state=outcome.state,
            report=outcome.report,
            annotations=outcome.annotations,
            unmatched=outcome.unmatched,
        )

    def _on_enter(self, state: SessionState) -> tuple[SessionState, list[Turn]]:
        """Stage-entry side effects; returns the updated state and the
        messages to persist with it."""
        stage = state.current
        if stage is Stage.BODY_WRAP_UP:
            state, essay = assemble_essay(state)
            return state, [("system", stage, essay)]
        if stage is Stage.GENERAL_REVISING:
            # Re-assemble so the conclusion (written after wrap-up) is in.
            state, essay = assemble_essay(state)
            state = record_system_artifact(state, stage, essay)
            return state, [("system", stage, essay)]
        if stage in _ANALYSIS_STAGES:
            essay = current_essay(state)
            history = self._store.load_messages(state.session_id)
            analysis = self._engine.analyze(state, essay, history)
            state = record_system_artifact(state, stage, essay)
            return state, [("assistant", stage, analysis.report.raw)]
        return state, []

    def _view(
        self,
        record: MessageRecord,
        state: SessionState,
        records: list[MessageRecord],
    ) -> MessageView:
        annotations: tuple[Annotation, ...] = ()
        unmatched: tuple[AnnotationClaim, ...] = ()
        if record.role == "assistant":
            extraction = extract_claims(record.content)
            if extraction.claims:
                target = self._claim_target(record, state, records)
                if target:
                    located, missing = locate(target, extraction.claims)
                    annotations = tuple(located)
                    unmatched = tuple(missing)
                else:
                    unmatched = extraction.claims
        return MessageView(
            seq=record.seq,
            role=record.role,
            stage_name=record.stage.title,
            content=record.content,
            created_at=record.created_at,
            annotations=annotations,
            unmatched=unmatched,
        )

    def _claim_target(
        self,
        record: MessageRecord,
        state: SessionState,
        records: list[MessageRecord],
    ) -> str | None:
        """Text a feedback message's quotes refer to: the user message the
        assistant was answering, or the stage's stored essay copy for the
        system-run analysis stages."""
        preceding = [
            r
            for r in records
            if r.stage is record.stage and r.role == "user" and r.seq < record.seq
        ]
        if preceding:
            return preceding[-1].content
        return state.latest_text(record.stage)
