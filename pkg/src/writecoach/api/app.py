"""Route handlers. Thin by contract: validate, delegate to the coach,
serialize. Stage rules, prompting, and persistence all live below."""

from __future__ import annotations

from typing import Annotated

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..config import AppConfig
from ..engine import ProviderFailure, SessionEngine, ValidationRejected
from ..errors import CoachError
from ..feedback import FeedbackError, MissingCriterion
from ..llm import (
    HttpTransport,
    MalformedResponse,
    ProviderUnavailable,
    ScriptedTransport,
)
from ..service import Busy, Forbidden, WritingCoach
from ..session import (
    EmptyAssignment,
    MissingSection,
    MissingSubmission,
    SessionCompleted,
    SubmissionNotAllowed,
)
from ..stages import Stage
from ..storage import (
    AuthFailed,
    DuplicateUsername,
    InMemoryStore,
    NotFound,
    SqliteStore,
    StorageUnavailable,
)
from .auth import TokenRegistry, Unauthorized, bearer_token
from .schemas import (
    AssessmentModel,
    CreateTaskRequest,
    ErrorBody,
    LoginRequest,
    MessagesResponse,
    RegisterRequest,
    ResourcesRequest,
    SubmitRequest,
    SubmitResponse,
    TaskViewModel,
    TokenResponse,
    ValidationModel,
    annotation_model,
    assessment_model,
    feedback_model,
    message_model,
    task_view,
    unmatched_model,
)


class InvalidStageName(CoachError):
    code = "invalid_stage"


# Most specific first; the first isinstance match wins.
_STATUS_MAP: tuple[tuple[type[CoachError], int], ...] = (
    (ValidationRejected, 400),
    (EmptyAssignment, 400),
    (InvalidStageName, 400),
    (Unauthorized, 401),
    (AuthFailed, 401),
    (Forbidden, 403),
    (NotFound, 404),
    (Busy, 409),
    (DuplicateUsername, 409),
    (SessionCompleted, 422),
    (MissingSubmission, 422),
    (SubmissionNotAllowed, 422),
    (MissingSection, 422),
    (ProviderFailure, 502),
    (ProviderUnavailable, 502),
    (MalformedResponse, 502),
    (FeedbackError, 502),
    (StorageUnavailable, 503),
)


def _status_for(error: CoachError) -> int:
    for kind, status in _STATUS_MAP:
        if isinstance(error, kind):
            return status
    return 500


def _detail_for(error: CoachError) -> dict | None:
    if isinstance(error, ValidationRejected):
        return {
            "reason": error.validation.reason,
            "redirect_message": error.validation.redirect_message,
        }
    if isinstance(error, MissingCriterion):
        return {"criterion": error.criterion}
    if isinstance(error, MissingSection):
        return {"section": error.section}
    return None


def create_app(
    config: AppConfig | None = None,
    *,
    coach: WritingCoach | None = None,
    tokens: TokenRegistry | None = None,
) -> FastAPI:
    config = config or AppConfig.from_env()
    if coach is None:
        store = InMemoryStore() if config.db_path == ":memory:" else SqliteStore(config.db_path)
        provider = config.provider_config()
        transport = (
            ScriptedTransport() if config.provider == "scripted" else HttpTransport(provider)
        )
        coach = WritingCoach(
            store,
            SessionEngine(provider, transport),
            rationales=config.resource_rationales,
        )
    tokens = tokens or TokenRegistry(config.token_ttl_seconds)

    app = FastAPI(title="writecoach", version="0.1.0", openapi_url="/spec")
    app.state.coach = coach
    app.state.tokens = tokens
    app.state.config = config

    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(CoachError)
    def coach_error_handler(_request: Request, error: CoachError):
        body = ErrorBody(code=error.code, message=str(error), detail=_detail_for(error))
        return JSONResponse(
            status_code=_status_for(error),
            content=body.model_dump(exclude_none=True),
        )

    @app.exception_handler(RequestValidationError)
    def request_error_handler(_request: Request, error: RequestValidationError):
        body = ErrorBody(
            code="invalid_request",
            message="request body or parameters failed validation",
            detail={"errors": [str(e.get("msg", e)) for e in error.errors()]},
        )
        return JSONResponse(status_code=400, content=body.model_dump(exclude_none=True))

    def current_user(
        authorization: Annotated[str | None, Header()] = None,
    ) -> str:
        return tokens.resolve(bearer_token(authorization))

    # -- auth ----------------------------------------------------------------
    @app.post("/auth/register", response_model=TokenResponse)
    def register(body: RegisterRequest) -> TokenResponse:
        user = coach.register(body.username, body.password)
        session = tokens.issue(user.user_id)
        return TokenResponse(
            token=session.token, user_id=session.user_id, expires_at=session.expires_at
        )

    @app.post("/auth/login", response_model=TokenResponse)
    def login(body: LoginRequest) -> TokenResponse:
        user_id = coach.login(body.username, body.password)
        session = tokens.issue(user_id)
        return TokenResponse(
            token=session.token, user_id=session.user_id, expires_at=session.expires_at
        )

    # -- tasks ---------------------------------------------------------------
    @app.post("/tasks", response_model=TaskViewModel)
    def create_task(body: CreateTaskRequest, user_id: str = Depends(current_user)) -> TaskViewModel:
        return task_view(coach.create_task(user_id, body.assignment_prompt))

    @app.get("/tasks/{task_id}", response_model=TaskViewModel)
    def get_task(task_id: str, user_id: str = Depends(current_user)) -> TaskViewModel:
        return task_view(coach.get_task(task_id, user_id))

    @app.post("/tasks/{task_id}/submit", response_model=SubmitResponse)
    def submit(task_id: str, body: SubmitRequest, user_id: str = Depends(current_user)) -> SubmitResponse:
        result = coach.submit(task_id, user_id, body.input)
        return SubmitResponse(
            feedback=feedback_model(result.report),
            annotations=[annotation_model(a) for a in result.annotations],
            unmatched=[unmatched_model(c) for c in result.unmatched],
            validation=ValidationModel(valid=True),
        )

    @app.post("/tasks/{task_id}/advance", response_model=TaskViewModel)
    def advance(task_id: str, user_id: str = Depends(current_user)) -> TaskViewModel:
        return task_view(coach.advance_task(task_id, user_id))

    @app.get("/tasks/{task_id}/messages", response_model=MessagesResponse)
    def messages(
        task_id: str,
        stage: Annotated[str | None, Query()] = None,
        user_id: str = Depends(current_user),
    ) -> MessagesResponse:
        stage_filter: Stage | None = None
        if stage is not None:
            try:
                stage_filter = Stage.from_title(stage)
            except ValueError as exc:
                raise InvalidStageName(str(exc)) from exc
        views = coach.messages(task_id, user_id, stage_filter)
        return MessagesResponse(messages=[message_model(v) for v in views])

    @app.post("/tasks/{task_id}/resources", response_model=list[AssessmentModel])
    def resources(
        task_id: str, body: ResourcesRequest, user_id: str = Depends(current_user)
    ) -> list[AssessmentModel]:
        assessments = coach.evaluate_resources(task_id, user_id, body.urls)
        return [assessment_model(a) for a in assessments]

    # -- meta ----------------------------------------------------------------
    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    return app
