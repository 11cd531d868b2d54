"""Provider client: unary completion with bounded retries.

Transport failures and 5xx/429 statuses are retried with exponential
backoff (1s base, doubling); anything else fails fast. Decode problems are
never retried: a well-formed transport exchange with a bad payload is the
provider's bug, not the network's.
"""

from __future__ import annotations

import time
from typing import Callable, Protocol

import httpx

from ..errors import CoachError
from ..prompts.render import PromptBundle
from .config import ProviderConfig
from .memory import MemoryWindow
from .wire import LlmResponse, decode_response, encode_request

BACKOFF_BASE_SECONDS = 1.0
RETRYABLE_STATUSES = frozenset({429})


class TransportError(CoachError):
    code = "transport_error"


class ProviderUnavailable(CoachError):
    code = "provider_unavailable"


class Transport(Protocol):
    def send(self, document: dict) -> tuple[int, dict]:
        """POST one request document; return (status, body)."""
        ...


class HttpTransport:
    """Real provider transport over HTTP; auth via bearer header only."""

    def __init__(self, config: ProviderConfig):
        self._client = httpx.Client(
            base_url=config.base_url.rstrip("/"),
            timeout=config.timeout_seconds,
            headers={"Authorization": f"Bearer {config.api_key}"},
        )

    def send(self, document: dict) -> tuple[int, dict]:
        try:
            response = self._client.post("/chat/completions", json=document)
        except httpx.HTTPError as exc:
            # never echo request details: the auth header must stay out of errors
            raise TransportError(type(exc).__name__) from exc
        try:
            body = response.json()
        except ValueError:
            body = {}
        return response.status_code, body

    def close(self):
        self._client.close()


def _retryable(status: int) -> bool:
    return status >= 500 or status in RETRYABLE_STATUSES


def complete(
    bundle: PromptBundle,
    window: MemoryWindow,
    config: ProviderConfig,
    transport: Transport,
    *,
    sleep: Callable[[float], None] = time.sleep,
) -> LlmResponse:
    """Send one completion request, retrying transient failures.

    Returns the decoded response with the attempt count; raises
    ProviderUnavailable once retries are exhausted (or immediately on a
    non-retryable provider status). MalformedResponse passes through.
    """
    document = encode_request(bundle, window, config)
    attempts = 0
    last_failure = "no attempt made"
    while attempts <= config.max_retries:
        attempts += 1
        started = time.monotonic()
        try:
            status, body = transport.send(document)
        except TransportError as exc:
            last_failure = f"transport failure: {exc}"
        else:
            if status == 200:
                decoded = decode_response(body)
                return LlmResponse(
                    content=decoded.content,
                    provider_latency=time.monotonic() - started,
                    attempts=attempts,
                )
            if not _retryable(status):
                raise ProviderUnavailable(f"provider rejected the request (status {status})")
            last_failure = f"status {status}"
        if attempts <= config.max_retries:
            sleep(BACKOFF_BASE_SECONDS * (2 ** (attempts - 1)))
    raise ProviderUnavailable(f"retries exhausted after {attempts} attempts ({last_failure})")
