"""In-memory store for tests and ephemeral runs.

Snapshots pass through the same serialized form as the durable backend, so
codec bugs surface here too rather than only against SQLite.
"""

from __future__ import annotations

import threading
import uuid
from collections.abc import Callable, Sequence
from datetime import datetime, timezone

from ..session import SessionState
from ..stages import Stage
from .base import AuthFailed, DuplicateUsername, NotFound, Store, Turn
from .passwords import hash_password, verify_password
from .records import ROLES, ConversationRecord, MessageRecord, UserRecord
from .snapshots import snapshot_dumps, snapshot_loads


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class InMemoryStore(Store):
    def __init__(self, *, clock: Callable[[], datetime] = _utcnow):
        self._clock = clock
        self._lock = threading.RLock()
        self._users: dict[str, UserRecord] = {}
        self._users_by_name: dict[str, str] = {}
        self._conversations: dict[str, ConversationRecord] = {}
        self._messages: dict[str, list[MessageRecord]] = {}
        self._next_seq: dict[str, int] = {}

    # -- users ------------------------------------------------------------
    def create_user(self, username: str, password: str) -> UserRecord:
        with self._lock:
            if username in self._users_by_name:
                raise DuplicateUsername(username)
            record = UserRecord(
                user_id=uuid.uuid4().hex,
                username=username,
                password_hash=hash_password(password),
                created_at=self._clock(),
            )
            self._users[record.user_id] = record
            self._users_by_name[username] = record.user_id
            return record

    def authenticate(self, username: str, password: str) -> str:
        with self._lock:
            user_id = self._users_by_name.get(username)
            record = self._users.get(user_id) if user_id else None
        if record is None or not verify_password(password, record.password_hash):
            raise AuthFailed("unknown username or wrong password")
        return record.user_id

    def get_user(self, user_id: str) -> UserRecord:
        with self._lock:
            record = self._users.get(user_id)
        if record is None:
            raise NotFound(f"user {user_id}")
        return record

    # -- conversations ----------------------------------------------------
    def create_conversation(self, state: SessionState) -> ConversationRecord:
        with self._lock:
            if state.user_id not in self._users:
                raise NotFound(f"user {state.user_id}")
            now = self._clock()
            record = ConversationRecord(
                conversation_id=state.session_id,
                user_id=state.user_id,
                snapshot=snapshot_dumps(state),
                created_at=now,
                updated_at=now,
            )
            self._conversations[record.conversation_id] = record
            self._messages[record.conversation_id] = []
            self._next_seq[record.conversation_id] = 1
            return record

    def get_conversation(self, conversation_id: str) -> ConversationRecord:
        with self._lock:
            record = self._conversations.get(conversation_id)
        if record is None:
            raise NotFound(f"conversation {conversation_id}")
        return record

    def save_snapshot(self, conversation_id: str, state: SessionState) -> None:
        with self._lock:
            record = self._conversations.get(conversation_id)
            if record is None:
                raise NotFound(f"conversation {conversation_id}")
            self._conversations[conversation_id] = ConversationRecord(
                conversation_id=record.conversation_id,
                user_id=record.user_id,
                snapshot=snapshot_dumps(state),
                created_at=record.created_at,
                updated_at=self._clock(),
            )

    def load_snapshot(self, conversation_id: str) -> SessionState:
        return snapshot_loads(self.get_conversation(conversation_id).snapshot)

    # -- messages ---------------------------------------------------------
    def _append_message(self, conversation_id: str, role: str, stage: Stage, content: str) -> MessageRecord:
        if role not in ROLES:
            raise ValueError(f"unknown role: {role}")
        seq = self._next_seq[conversation_id]
        self._next_seq[conversation_id] = seq + 1
        record = MessageRecord(
            message_id=uuid.uuid4().hex,
            conversation_id=conversation_id,
            role=role,
            stage=stage,
            content=content,
            created_at=self._clock(),
            seq=seq,
        )
        self._messages[conversation_id].append(record)
        return record

    def save_message(self, conversation_id: str, role: str, stage: Stage, content: str) -> MessageRecord:
        with self._lock:
            if conversation_id not in self._conversations:
                raise NotFound(f"conversation {conversation_id}")
            return self._append_message(conversation_id, role, stage, content)

    def load_messages(self, conversation_id: str, stage: Stage | None = None) -> list[MessageRecord]:
        with self._lock:
            if conversation_id not in self._conversations:
                raise NotFound(f"conversation {conversation_id}")
            rows = list(self._messages[conversation_id])
        if stage is not None:
            rows = [m for m in rows if m.stage is stage]
        return rows

    def append_interaction(
        self, conversation_id: str, turns: Sequence[Turn], state: SessionState
    ) -> list[MessageRecord]:
        with self._lock:
            if conversation_id not in self._conversations:
                raise NotFound(f"conversation {conversation_id}")
            # Stage the writes so a bad turn leaves nothing behind.
            for role, _, _ in turns:
                if role not in ROLES:
                    raise ValueError(f"unknown role: {role}")
            records = [
                self._append_message(conversation_id, role, stage, content)
                for role, stage, content in turns
            ]
            self.save_snapshot(conversation_id, state)
            return records
