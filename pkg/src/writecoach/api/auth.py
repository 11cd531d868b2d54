"""Bearer-token sessions: opaque 256-bit tokens with expiry."""

from __future__ import annotations

import secrets
import threading
import time
from collections.abc import Callable
from dataclasses import dataclass

from ..errors import CoachError


class Unauthorized(CoachError):
    code = "unauthorized"


@dataclass(frozen=True)
class ApiSession:
    token: str
    user_id: str
    expires_at: float


class TokenRegistry:
    """In-process token table. Tokens are single-user and expire; expired
    tokens are rejected everywhere and purged lazily."""

    def __init__(self, ttl_seconds: float = 24 * 3600, *, clock: Callable[[], float] = time.time):
        self._ttl = ttl_seconds
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, ApiSession] = {}

    def issue(self, user_id: str) -> ApiSession:
        session = ApiSession(
            token=secrets.token_urlsafe(32),
            user_id=user_id,
            expires_at=self._clock() + self._ttl,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve(self, token: str | None) -> str:
        """Return the user_id for a live token; Unauthorized otherwise."""
        if not token:
            raise Unauthorized("missing bearer token")
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                raise Unauthorized("unknown token")
            if session.expires_at <= self._clock():
                del self._sessions[token]
                raise Unauthorized("token expired")
        return session.user_id

    def revoke(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)


def bearer_token(authorization: str | None) -> str | None:
    """Extract the token from an ``Authorization: Bearer <token>`` header."""
    if not authorization:
        return None
    scheme, _, token = authorization.partition(" ")
    if scheme.lower() != "bearer" or not token:
        return None
    return token.strip()
