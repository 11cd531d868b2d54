from __future__ import annotations

import threading

import pytest
from fastapi.testclient import TestClient

from writecoach.api.app import create_app
from writecoach.api.auth import TokenRegistry
from writecoach.config import AppConfig
from writecoach.engine import SessionEngine
from writecoach.llm import ProviderConfig, ScriptedTransport
from writecoach.service import WritingCoach
from writecoach.stages import Stage
from writecoach.storage import InMemoryStore

from test_service import (
    ASSIGNMENT,
    BODY_1,
    BODY_2,
    CONCLUSION,
    INTRO,
    OUTLINE,
    PREWRITING,
    RESOURCES,
    REVISED,
    THESIS,
    WALKTHROUGH,
    make_coach,
)


@pytest.fixture
def client():
    coach, _ = make_coach()
    app = create_app(AppConfig(), coach=coach)
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


def register(client, username="ada", password="pw-pw-pw-1"):
    response = client.post(
        "/auth/register", json={"username": username, "password": password}
    )
    assert response.status_code == 200, response.text
    token = response.json()["token"]
    return {"Authorization": f"Bearer {token}"}


def create_task(client, auth):
    response = client.post("/tasks", json={"assignment_prompt": ASSIGNMENT}, headers=auth)
    assert response.status_code == 200, response.text
    return response.json()["task_id"]


def http_walk(client, auth, task_id):
    for _stage, action, payload in WALKTHROUGH:
        if action == "submit":
            response = client.post(
                f"/tasks/{task_id}/submit", json={"input": payload}, headers=auth
            )
        else:
            response = client.post(f"/tasks/{task_id}/advance", headers=auth)
        assert response.status_code == 200, response.text
    return client.get(f"/tasks/{task_id}", headers=auth).json()


# -- auth ---------------------------------------------------------------------


def test_healthz_open(client):
    assert client.get("/healthz").json() == {"status": "ok"}


def test_register_then_login(client):
    register(client, "ada")
    response = client.post(
        "/auth/login", json={"username": "ada", "password": "pw-pw-pw-1"}
    )
    assert response.status_code == 200
    assert response.json()["token"]


def test_duplicate_username_409(client):
    register(client, "ada")
    response = client.post(
        "/auth/register", json={"username": "ada", "password": "pw-pw-pw-2"}
    )
    assert response.status_code == 409
    assert response.json()["code"] == "duplicate_username"


def test_bad_login_401(client):
    register(client, "ada")
    response = client.post("/auth/login", json={"username": "ada", "password": "nope"})
    assert response.status_code == 401
    assert response.json()["code"] == "auth_failed"


def test_short_password_field_validation_400(client):
    response = client.post("/auth/register", json={"username": "ada", "password": "x"})
    assert response.status_code == 400
    assert response.json()["code"] == "invalid_request"


def test_every_protected_route_requires_auth(client):
    open_paths = {"/auth/register", "/auth/login", "/healthz", "/spec"}
    probes = {
        ("POST", "/tasks"): {"json": {"assignment_prompt": "x"}},
        ("GET", "/tasks/t1"): {},
        ("POST", "/tasks/t1/submit"): {"json": {"input": "x"}},
        ("POST", "/tasks/t1/advance"): {},
        ("GET", "/tasks/t1/messages"): {},
        ("POST", "/tasks/t1/resources"): {"json": {"urls": []}},
    }
    app_routes = {
        (method, route.path)
        for route in client.app.routes
        if hasattr(route, "methods")
        for method in route.methods - {"HEAD", "OPTIONS"}
    }
    protected = {
        (m, p) for (m, p) in app_routes
        if p not in open_paths and not p.startswith(("/docs", "/redoc"))
    }
    probed = {
        (m, p.replace("t1", "{task_id}")) for (m, p) in probes
    }
    assert probed == protected  # a new route must be probed here or made open

    for (method, path), kwargs in probes.items():
        no_token = client.request(method, path, **kwargs)
        assert no_token.status_code == 401, (method, path)
        assert no_token.json()["code"] == "unauthorized"
        bad_token = client.request(
            method, path, headers={"Authorization": "Bearer nope"}, **kwargs
        )
        assert bad_token.status_code == 401, (method, path)


def test_expired_token_401():
    now = [1000.0]
    coach, _ = make_coach()
    app = create_app(
        AppConfig(),
        coach=coach,
        tokens=TokenRegistry(ttl_seconds=60, clock=lambda: now[0]),
    )
    with TestClient(app) as client:
        auth = register(client)
        assert client.post(
            "/tasks", json={"assignment_prompt": "x"}, headers=auth
        ).status_code == 200
        now[0] += 61
        response = client.post("/tasks", json={"assignment_prompt": "x"}, headers=auth)
        assert response.status_code == 401


# -- task lifecycle over HTTP -----------------------------------------------------


def test_create_task_shape(client):
    auth = register(client)
    response = client.post("/tasks", json={"assignment_prompt": ASSIGNMENT}, headers=auth)
    body = response.json()
    assert body["stage"] == {
        "name": "PreWriting",
        "ordinal": 0,
        "input_kind": "free_text",
        "criteria": ["alignment", "specificity"],
    }
    assert body["completed"] is False
    assert body["available_actions"] == ["submit", "advance"]
    assert body["artifacts"] == {}


def test_empty_assignment_400(client):
    auth = register(client)
    response = client.post("/tasks", json={"assignment_prompt": "   "}, headers=auth)
    assert response.status_code == 400
    assert response.json()["code"] == "empty_assignment"


def test_unknown_task_404_foreign_task_403(client):
    auth = register(client, "ada")
    task_id = create_task(client, auth)
    assert client.get("/tasks/missing", headers=auth).status_code == 404
    other = register(client, "eve", "pw-pw-pw-2")
    response = client.get(f"/tasks/{task_id}", headers=other)
    assert response.status_code == 403
    assert response.json()["code"] == "forbidden"


def test_submit_response_shape(client):
    auth = register(client)
    task_id = create_task(client, auth)
    response = client.post(
        f"/tasks/{task_id}/submit", json={"input": PREWRITING}, headers=auth
    )
    body = response.json()
    assert body["feedback"]["stage"] == "PreWriting"
    assert [s["criterion"] for s in body["feedback"]["sections"]] == [
        "alignment",
        "specificity",
    ]
    assert body["feedback"]["verdict"] in ("ready", "revise")
    assert body["validation"] == {"valid": True, "reason": None, "redirect_message": None}


def test_validation_rejection_400_with_redirect(client):
    auth = register(client)
    task_id = create_task(client, auth)
    response = client.post(
        f"/tasks/{task_id}/submit", json={"input": "1234 55 99!!"}, headers=auth
    )
    assert response.status_code == 400
    body = response.json()
    assert body["code"] == "validation_rejected"
    assert body["detail"]["reason"] == "low_alpha_ratio"
    assert "type" in body["detail"]["redirect_message"]


def test_advance_without_submission_422(client):
    auth = register(client)
    task_id = create_task(client, auth)
    response = client.post(f"/tasks/{task_id}/advance", headers=auth)
    assert response.status_code == 422
    assert response.json()["code"] == "missing_submission"


def test_submit_at_no_input_stage_422(client):
    auth = register(client)
    task_id = create_task(client, auth)
    for _stage, action, payload in WALKTHROUGH[:13]:  # stops at BodyWrapUp
        if action == "submit":
            client.post(f"/tasks/{task_id}/submit", json={"input": payload}, headers=auth)
        else:
            client.post(f"/tasks/{task_id}/advance", headers=auth)
    view = client.get(f"/tasks/{task_id}", headers=auth).json()
    assert view["stage"]["name"] == "BodyWrapUp"
    assert view["available_actions"] == ["advance"]
    response = client.post(
        f"/tasks/{task_id}/submit", json={"input": "extra paragraph"}, headers=auth
    )
    assert response.status_code == 422
    assert response.json()["code"] == "submission_not_allowed"


def test_busy_submit_409(client):
    auth = register(client)
    task_id = create_task(client, auth)
    lock = client.app.state.coach._lock_for(task_id)
    assert lock.acquire(blocking=False)
    try:
        response = client.post(
            f"/tasks/{task_id}/submit", json={"input": PREWRITING}, headers=auth
        )
        assert response.status_code == 409
        assert response.json()["code"] == "busy"
    finally:
        lock.release()


def test_concurrent_submits_one_wins_one_409():
    # a transport that stalls so both requests really overlap
    release = threading.Event()

    class SlowTransport(ScriptedTransport):
        def send(self, document):
            release.wait(timeout=5)
            return super().send(document)

    coach = WritingCoach(
        InMemoryStore(),
        SessionEngine(
            ProviderConfig(api_key="k"), SlowTransport(), sleep=lambda _s: None
        ),
    )
    app = create_app(AppConfig(), coach=coach)
    with TestClient(app) as client:
        auth = register(client)
        task_id = create_task(client, auth)
        statuses = []

        def fire():
            response = client.post(
                f"/tasks/{task_id}/submit", json={"input": PREWRITING}, headers=auth
            )
            statuses.append(response.status_code)

        first = threading.Thread(target=fire)
        second = threading.Thread(target=fire)
        first.start()
        while not release.wait(0) and not statuses and first.is_alive():
            if coach._lock_for(task_id).locked():
                break
        second.start()
        second.join(timeout=5)
        release.set()
        first.join(timeout=5)
        assert sorted(statuses) == [200, 409]


def test_completed_task_has_no_actions(client):
    auth = register(client)
    task_id = create_task(client, auth)
    final = http_walk(client, auth, task_id)
    assert final["completed"] is True
    assert final["stage"]["name"] == "GrammarCheck"
    assert final["available_actions"] == []
    response = client.post(f"/tasks/{task_id}/advance", headers=auth)
    assert response.status_code == 422
    assert response.json()["code"] == "session_completed"


# -- walkthrough equivalence --------------------------------------------------------


def test_http_walkthrough_equals_direct_service_walkthrough(client):
    auth = register(client)
    task_id = create_task(client, auth)
    http_final = http_walk(client, auth, task_id)

    coach, _ = make_coach()
    user = coach.register("direct", "pw-pw-pw-3")
    state = coach.create_task(user.user_id, ASSIGNMENT)
    from test_service import walk

    direct_final = walk(coach, state.session_id, user.user_id)

    from writecoach.api.schemas import task_view

    direct_view = task_view(direct_final).model_dump()
    direct_view["task_id"] = http_final["task_id"]  # ids are random; rest must match
    assert direct_view == http_final

    http_messages = client.get(f"/tasks/{task_id}/messages", headers=auth).json()["messages"]
    direct_messages = coach.messages(state.session_id, user.user_id)
    assert [m["content"] for m in http_messages] == [m.content for m in direct_messages]
    assert [m["role"] for m in http_messages] == [m.role for m in direct_messages]


# -- messages and annotations ---------------------------------------------------------


def test_messages_stage_filter_and_bad_stage(client):
    auth = register(client)
    task_id = create_task(client, auth)
    client.post(f"/tasks/{task_id}/submit", json={"input": PREWRITING}, headers=auth)
    response = client.get(
        f"/tasks/{task_id}/messages", params={"stage": "PreWriting"}, headers=auth
    )
    assert [m["stage"] for m in response.json()["messages"]] == ["PreWriting"] * 2
    bad = client.get(
        f"/tasks/{task_id}/messages", params={"stage": "Daydreaming"}, headers=auth
    )
    assert bad.status_code == 400
    assert bad.json()["code"] == "invalid_stage"


def test_annotation_offsets_slice_the_stored_essay(client):
    auth = register(client)
    task_id = create_task(client, auth)
    http_walk(client, auth, task_id)
    view = client.get(f"/tasks/{task_id}", headers=auth).json()
    essay = view["artifacts"]["WordChoiceEvaluation"]["latest"]
    messages = client.get(
        f"/tasks/{task_id}/messages",
        params={"stage": "WordChoiceEvaluation"},
        headers=auth,
    ).json()["messages"]
    annotated = [m for m in messages if m["annotations"]]
    assert annotated, "the word-choice report must carry annotations"
    for annotation in annotated[0]["annotations"]:
        quoted = essay[annotation["start"] : annotation["end"]]
        assert quoted
        assert annotation["suggestion"].startswith(quoted)
        assert annotation["category"] == "word_choice"


# -- resources ---------------------------------------------------------------------


def test_resources_endpoint_tiers(client):
    auth = register(client)
    task_id = create_task(client, auth)
    response = client.post(
        f"/tasks/{task_id}/resources",
        json={"urls": ["https://ocean.mit.edu", "http://en.wikipedia.org", "junk"]},
        headers=auth,
    )
    tiers = [a["tier"] for a in response.json()]
    assert tiers == ["High", "Low", "Invalid"]


def test_resources_endpoint_persists_nothing(client):
    auth = register(client)
    task_id = create_task(client, auth)
    client.post(
        f"/tasks/{task_id}/resources",
        json={"urls": ["https://ocean.mit.edu"]},
        headers=auth,
    )
    messages = client.get(f"/tasks/{task_id}/messages", headers=auth).json()["messages"]
    assert messages == []


# -- meta --------------------------------------------------------------------------


def test_openapi_spec_lists_every_route(client):
    spec = client.get("/spec").json()
    spec_paths = set(spec["paths"])
    app_paths = {
        route.path
        for route in client.app.routes
        if hasattr(route, "methods") and route.path not in {"/spec"}
        and not route.path.startswith(("/docs", "/redoc"))
    }
    assert app_paths <= spec_paths


def test_error_body_never_includes_api_key(client):
    auth = register(client)
    task_id = create_task(client, auth)
    response = client.post(
        f"/tasks/{task_id}/submit", json={"input": "12 34 !!"}, headers=auth
    )
    assert "test-secret-key" not in response.text
    assert "api_key" not in response.text
    assert "Authorization" not in response.text
