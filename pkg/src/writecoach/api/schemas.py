"""Wire schemas and converters from domain objects to response models."""

from __future__ import annotations

from datetime import datetime

from pydantic import BaseModel, Field

from ..feedback import Annotation, AnnotationClaim, FeedbackReport
from ..resources import ReliabilityAssessment
from ..service import MessageView
from ..session import SessionState
from ..stages import InputKind, stage_spec

# -- requests ---------------------------------------------------------------


class RegisterRequest(BaseModel):
    username: str = Field(min_length=1, max_length=128)
    password: str = Field(min_length=8, max_length=1024)


class LoginRequest(BaseModel):
    username: str
    password: str


class CreateTaskRequest(BaseModel):
    assignment_prompt: str


class SubmitRequest(BaseModel):
    input: str


class ResourcesRequest(BaseModel):
    urls: list[str]


# -- responses ----------------------------------------------------------------


class TokenResponse(BaseModel):
    token: str
    user_id: str
    expires_at: float


class StageModel(BaseModel):
    name: str
    ordinal: int
    input_kind: str
    criteria: list[str]


class ArtifactSummary(BaseModel):
    latest: str
    revision_count: int


class TaskViewModel(BaseModel):
    task_id: str
    stage: StageModel
    completed: bool
    available_actions: list[str]
    artifacts: dict[str, ArtifactSummary]


class SectionModel(BaseModel):
    criterion: str
    body: str


class FeedbackModel(BaseModel):
    stage: str
    sections: list[SectionModel]
    verdict: str
    raw: str


class AnnotationModel(BaseModel):
    start: int
    end: int
    category: str
    suggestion: str
    explanation: str | None = None


class UnmatchedClaimModel(BaseModel):
    quote: str
    category: str
    suggestion: str
    explanation: str | None = None


class ValidationModel(BaseModel):
    valid: bool
    reason: str | None = None
    redirect_message: str | None = None


class SubmitResponse(BaseModel):
    feedback: FeedbackModel
    annotations: list[AnnotationModel]
    unmatched: list[UnmatchedClaimModel]
    validation: ValidationModel


class AssessmentModel(BaseModel):
    url: str
    tier: str
    reasons: list[str]
    rationale: str | None = None


class MessageModel(BaseModel):
    seq: int
    role: str
    stage: str
    content: str
    created_at: datetime
    annotations: list[AnnotationModel]
    unmatched: list[UnmatchedClaimModel]


class MessagesResponse(BaseModel):
    messages: list[MessageModel]


class ErrorBody(BaseModel):
    code: str
    message: str
    detail: dict | None = None


# -- converters ----------------------------------------------------------------


def task_view(state: SessionState) -> TaskViewModel:
    spec = stage_spec(state.current)
    actions: list[str] = []
    if not state.completed:
        if spec.input_kind is not InputKind.NONE_REQUIRED:
            actions.append("submit")
        actions.append("advance")
    artifacts = {
        stage.title: ArtifactSummary(latest=slot.latest, revision_count=slot.revision_count)
        for stage, slot in sorted(state.artifacts.items(), key=lambda kv: kv[0].ordinal)
    }
    return TaskViewModel(
        task_id=state.session_id,
        stage=StageModel(
            name=state.current.title,
            ordinal=state.current.ordinal,
            input_kind=spec.input_kind.value,
            criteria=list(spec.criteria),
        ),
        completed=state.completed,
        available_actions=actions,
        artifacts=artifacts,
    )


def feedback_model(report: FeedbackReport) -> FeedbackModel:
    return FeedbackModel(
        stage=report.stage_name,
        sections=[SectionModel(criterion=s.criterion, body=s.body) for s in report.sections],
        verdict=report.verdict.value,
        raw=report.raw,
    )


def annotation_model(annotation: Annotation) -> AnnotationModel:
    return AnnotationModel(
        start=annotation.start,
        end=annotation.end,
        category=annotation.category.value,
        suggestion=annotation.suggestion,
        explanation=annotation.explanation,
    )


def unmatched_model(claim: AnnotationClaim) -> UnmatchedClaimModel:
    return UnmatchedClaimModel(
        quote=claim.quote,
        category=claim.category.value,
        suggestion=claim.suggestion,
        explanation=claim.explanation,
    )


def assessment_model(assessment: ReliabilityAssessment) -> AssessmentModel:
    return AssessmentModel(
        url=assessment.url,
        tier=assessment.tier.value,
        reasons=list(assessment.reasons),
        rationale=assessment.rationale,
    )


def message_model(view: MessageView) -> MessageModel:
    return MessageModel(
        seq=view.seq,
        role=view.role,
        stage=view.stage_name,
        content=view.content,
        created_at=view.created_at,
        annotations=[annotation_model(a) for a in view.annotations],
        unmatched=[unmatched_model(c) for c in view.unmatched],
    )
