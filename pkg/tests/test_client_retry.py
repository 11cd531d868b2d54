from __future__ import annotations

import pytest

from writecoach.llm.client import (
    BACKOFF_BASE_SECONDS,
    ProviderUnavailable,
    TransportError,
    complete,
)
from writecoach.llm.config import ProviderConfig
from writecoach.llm.memory import MemoryWindow
from writecoach.llm.wire import MalformedResponse
from writecoach.prompts.render import PromptBundle

BUNDLE = PromptBundle("sys", (), "hello")
WINDOW = MemoryWindow((), ())
OK_BODY = {"choices": [{"message": {"content": "fine"}}]}


class SequenceTransport:
    """Replays (status, body) pairs or raises when the entry is 'error'."""

    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.attempts = 0

    def send(self, document):
        self.attempts += 1
        outcome = self.outcomes.pop(0)
        if outcome == "error":
            raise TransportError("boom")
        return outcome


def run(outcomes, *, max_retries=2):
    transport = SequenceTransport(outcomes)
    sleeps: list[float] = []
    config = ProviderConfig(api_key="super-secret-key", max_retries=max_retries)
    try:
        response = complete(BUNDLE, WINDOW, config, transport, sleep=sleeps.append)
    except Exception as exc:
        return transport, sleeps, exc
    return transport, sleeps, response


def test_success_first_try():
    transport, sleeps, response = run([(200, OK_BODY)])
    assert response.content == "fine"
    assert response.attempts == 1
    assert transport.attempts == 1
    assert sleeps == []


def test_transport_error_then_success():
    transport, sleeps, response = run(["error", (200, OK_BODY)])
    assert response.attempts == 2
    assert sleeps == [1.0]


def test_500_then_429_then_success_backoff_doubles():
    transport, sleeps, response = run([(500, {}), (429, {}), (200, OK_BODY)])
    assert response.attempts == 3
    assert sleeps == [1.0, 2.0]
    assert sleeps == [BACKOFF_BASE_SECONDS * 2**i for i in range(2)]


def test_retries_exhausted_counts_attempts():
    transport, sleeps, exc = run([(503, {}), (503, {}), (503, {})], max_retries=2)
    assert isinstance(exc, ProviderUnavailable)
    assert transport.attempts == 3  # max_retries + 1
    assert sleeps == [1.0, 2.0]  # no sleep after the final attempt


def test_max_retries_zero_means_single_attempt():
    transport, sleeps, exc = run(["error"], max_retries=0)
    assert isinstance(exc, ProviderUnavailable)
    assert transport.attempts == 1
    assert sleeps == []


@pytest.mark.parametrize("status", [400, 401, 403, 404, 422])
def test_client_errors_fail_fast(status):
    transport, sleeps, exc = run([(status, {})])
    assert isinstance(exc, ProviderUnavailable)
    assert transport.attempts == 1
    assert sleeps == []
    assert str(status) in str(exc)


@pytest.mark.parametrize("status", [500, 502, 503, 504, 429])
def test_server_errors_and_429_retry(status):
    transport, _, response = run([(status, {}), (200, OK_BODY)])
    assert response.attempts == 2


def test_malformed_body_not_retried():
    transport, sleeps, exc = run([(200, {"choices": []}), (200, OK_BODY)])
    assert isinstance(exc, MalformedResponse)
    assert transport.attempts == 1  # decode failure ends the exchange
    assert sleeps == []


def test_api_key_never_in_error_text():
    for outcomes in (["error"], [(503, {})], [(400, {})]):
        _, _, exc = run(outcomes * 3, max_retries=2)
        assert isinstance(exc, Exception)
        assert "super-secret-key" not in str(exc)
        assert "super-secret-key" not in repr(exc)


def test_api_key_not_in_config_repr():
    config = ProviderConfig(api_key="super-secret-key")
    assert "super-secret-key" not in repr(config)
    assert "super-secret-key" not in str(config)


def test_request_document_sent_unchanged_across_retries():
    documents = []

    class Recording:
        def __init__(self):
            self.calls = 0

        def send(self, document):
            documents.append(document)
            self.calls += 1
            if self.calls < 3:
                return 500, {}
            return 200, OK_BODY

    config = ProviderConfig(max_retries=2)
    complete(BUNDLE, WINDOW, config, Recording(), sleep=lambda _s: None)
    assert len(documents) == 3
    assert documents[0] is documents[1] is documents[2]


def test_exhaustion_message_names_last_failure():
    _, _, exc = run(["error", (503, {}), "error"], max_retries=2)
    assert isinstance(exc, ProviderUnavailable)
    assert "3 attempts" in str(exc)
    assert "transport failure" in str(exc)
