"""One-submission pipeline: validate, record, prompt, complete, parse, locate.

The engine owns no storage and holds no locks; it turns (state, input,
history) into (new state, feedback artifacts) and leaves persistence and
serialization to the caller.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from .errors import CoachError
from .feedback import (
    Annotation,
    AnnotationClaim,
    FeedbackError,
    FeedbackReport,
    extract_claims,
    locate,
    parse_feedback,
)
from .llm import (
    LlmResponse,
    MalformedResponse,
    MemoryWindow,
    ProviderConfig,
    ProviderUnavailable,
    Transport,
    assemble_context,
    complete,
)
from .llm.memory import HistoryMessage
from .prompts.render import PromptBundle, render
from .prompts.templates import template_for
from .prompts.validation import ValidationResult, validate_input
from .session import (
    SessionCompleted,
    SessionState,
    SubmissionNotAllowed,
    record_submission,
)
from .stages import InputKind, Stage, stage_spec


class ValidationRejected(CoachError):
    """Input failed the deterministic pre-LLM checks; carries the redirect."""

    code = "validation_rejected"

    def __init__(self, validation: ValidationResult):
        super().__init__(validation.redirect_message or "input rejected")
        self.validation = validation


class ProviderFailure(CoachError):
    """The model call failed after the submission was recorded.

    ``state`` is the post-submission state: the user's work is kept even
    though feedback is absent.
    """

    code = "provider_failure"

    def __init__(self, state: SessionState, message: str):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class SubmissionOutcome:
    state: SessionState
    validation: ValidationResult
    report: FeedbackReport
    annotations: tuple[Annotation, ...]
    unmatched: tuple[AnnotationClaim, ...]
    response: LlmResponse


@dataclass(frozen=True)
class AnalysisOutcome:
    report: FeedbackReport
    annotations: tuple[Annotation, ...]
    unmatched: tuple[AnnotationClaim, ...]
    response: LlmResponse


class SessionEngine:
    def __init__(
        self,
        config: ProviderConfig,
        transport: Transport,
        *,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self._config = config
        self._transport = transport
        self._sleep = sleep

    def _complete_checked(self, bundle, window) -> LlmResponse:
        try:
            return complete(
                bundle, window, self._config, self._transport, sleep=self._sleep
            )
        except (ProviderUnavailable, MalformedResponse):
            raise

    def submit(
        self, state: SessionState, text: str, history: Iterable[HistoryMessage]
    ) -> SubmissionOutcome:
        """Validate and record ``text`` at the current stage, then fetch and
        parse feedback. The stage never changes here."""
        if state.completed:
            raise SessionCompleted(f"session {state.session_id} is already complete")
        spec = stage_spec(state.current)
        if spec.input_kind is InputKind.NONE_REQUIRED:
            raise SubmissionNotAllowed(f"{state.current.title} takes no submission")
        validation = validate_input(text, spec)
        if not validation.valid:
            raise ValidationRejected(validation)

        new_state = record_submission(state, text)
        # Context comes from the pre-submission state so the input is never
        # echoed back as its own context.
        bundle = render(template_for(state.current), state, text)
        window = assemble_context(state, history, self._config.context_pairs)
        try:
            response = self._complete_checked(bundle, window)
            report = parse_feedback(response.content, spec)
        except (ProviderUnavailable, MalformedResponse, FeedbackError) as exc:
            raise ProviderFailure(new_state, str(exc)) from exc

        extraction = extract_claims(response.content)
        annotations, unmatched = locate(text, extraction.claims)
        return SubmissionOutcome(
            state=new_state,
            validation=validation,
            report=report,
            annotations=tuple(annotations),
            unmatched=tuple(unmatched),
            response=response,
        )

    def analyze(
        self, state: SessionState, essay: str, history: Iterable[HistoryMessage]
    ) -> AnalysisOutcome:
        """Run the current stage's prompt over a stored essay (no user input).

        Used for the stages that review the whole essay on entry.
        """
        spec = stage_spec(state.current)
        bundle = render(template_for(state.current), state, essay)
        window = assemble_context(state, history, self._config.context_pairs)
        try:
            response = self._complete_checked(bundle, window)
            report = parse_feedback(response.content, spec)
        except (ProviderUnavailable, MalformedResponse, FeedbackError) as exc:
            raise ProviderFailure(state, str(exc)) from exc

        extraction = extract_claims(response.content)
        annotations, unmatched = locate(essay, extraction.claims)
        return AnalysisOutcome(
            report=report,
            annotations=tuple(annotations),
            unmatched=tuple(unmatched),
            response=response,
        )

    def rationale(self, prompt: str, question: str) -> str:
        """Free-form one-shot completion (no stage template), e.g. for
        resource-tier rationales. The tier is decided before this runs."""
        bundle = PromptBundle(
            system_message=prompt,
            context_messages=(),
            user_message=question,
        )
        window = MemoryWindow((), ())
        response = self._complete_checked(bundle, window)
        return response.content
