"""SQLite-backed store.

Single connection serialized by a lock; writes run in explicit IMMEDIATE
transactions so a crash mid-write leaves either the old rows or the new
ones. Schema migrations are applied idempotently at open, tracked via
``PRAGMA user_version`` (keeping the schema at exactly three tables).
"""

from __future__ import annotations

import sqlite3
import threading
import uuid
from collections.abc import Callable, Sequence
from datetime import datetime, timezone

from ..session import SessionState
from ..stages import Stage
from .base import (
    AuthFailed,
    DuplicateUsername,
    NotFound,
    StorageUnavailable,
    Store,
    Turn,
)
from .passwords import hash_password, verify_password
from .records import ROLES, ConversationRecord, MessageRecord, UserRecord
from .snapshots import snapshot_dumps, snapshot_loads

# Each entry is one schema version: a list of statements applied in order
# inside a single transaction. executescript() is avoided because it
# auto-commits any open transaction.
_MIGRATIONS: list[list[str]] = [
    [
        """
        CREATE TABLE users (
            user_id       TEXT PRIMARY KEY,
            username      TEXT NOT NULL UNIQUE,
            password_hash TEXT NOT NULL,
            created_at    TEXT NOT NULL
        )
        """,
        """
        CREATE TABLE conversations (
            conversation_id TEXT PRIMARY KEY,
            user_id         TEXT NOT NULL REFERENCES users(user_id),
            snapshot        TEXT NOT NULL,
            created_at      TEXT NOT NULL,
            updated_at      TEXT NOT NULL
        )
        """,
        """
        CREATE TABLE messages (
            message_id      TEXT PRIMARY KEY,
            conversation_id TEXT NOT NULL REFERENCES conversations(conversation_id),
            role            TEXT NOT NULL CHECK (role IN ('user','assistant','system')),
            stage           TEXT NOT NULL,
            content         TEXT NOT NULL,
            created_at      TEXT NOT NULL,
            seq             INTEGER NOT NULL,
            UNIQUE (conversation_id, seq)
        )
        """,
        "CREATE INDEX idx_messages_conv_seq ON messages (conversation_id, seq)",
    ],
]


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class SqliteStore(Store):
    def __init__(self, path: str = ":memory:", *, clock: Callable[[], datetime] = _utcnow):
        self._clock = clock
        self._lock = threading.RLock()
        try:
            self._conn = sqlite3.connect(
                path, check_same_thread=False, isolation_level=None
            )
        except sqlite3.Error as exc:
            raise StorageUnavailable(f"cannot open database at {path}") from exc
        self._conn.execute("PRAGMA foreign_keys = ON")
        self._migrate()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def _migrate(self) -> None:
        with self._lock:
            (version,) = self._conn.execute("PRAGMA user_version").fetchone()
            for target, statements in enumerate(_MIGRATIONS, start=1):
                if version >= target:
                    continue
                self._conn.execute("BEGIN IMMEDIATE")
                try:
                    for statement in statements:
                        self._conn.execute(statement)
                    self._conn.execute(f"PRAGMA user_version = {target}")
                    self._conn.execute("COMMIT")
                except BaseException:
                    self._conn.execute("ROLLBACK")
                    raise

    def _write(self, fn):
        """Run ``fn(conn)`` inside one IMMEDIATE transaction."""
        with self._lock:
            self._conn.execute("BEGIN IMMEDIATE")
            try:
                result = fn(self._conn)
                self._conn.execute("COMMIT")
                return result
            except BaseException:
                self._conn.execute("ROLLBACK")
                raise

    # -- users ------------------------------------------------------------
    def create_user(self, username: str, password: str) -> UserRecord:
        record = UserRecord(
            user_id=uuid.uuid4().hex,
            username=username,
            password_hash=hash_password(password),
            created_at=self._clock(),
        )

        def insert(conn: sqlite3.Connection):
            try:
                conn.execute(
                    "INSERT INTO users (user_id, username, password_hash, created_at)"
                    " VALUES (?, ?, ?, ?)",
                    (
                        record.user_id,
                        record.username,
                        record.password_hash,
                        record.created_at.isoformat(),
                    ),
                )
            except sqlite3.IntegrityError as exc:
                raise DuplicateUsername(username) from exc
            return record

        return self._write(insert)

    def authenticate(self, username: str, password: str) -> str:
        with self._lock:
            row = self._conn.execute(
                "SELECT user_id, password_hash FROM users WHERE username = ?",
                (username,),
            ).fetchone()
        if row is None or not verify_password(password, row[1]):
            raise AuthFailed("unknown username or wrong password")
        return row[0]

    def get_user(self, user_id: str) -> UserRecord:
        with self._lock:
            row = self._conn.execute(
                "SELECT user_id, username, password_hash, created_at"
                " FROM users WHERE user_id = ?",
                (user_id,),
            ).fetchone()
        if row is None:
            raise NotFound(f"user {user_id}")
        return UserRecord(
            user_id=row[0],
            username=row[1],
            password_hash=row[2],
            created_at=datetime.fromisoformat(row[3]),
        )

    # -- conversations ----------------------------------------------------
    def create_conversation(self, state: SessionState) -> ConversationRecord:
        now = self._clock()
        record = ConversationRecord(
            conversation_id=state.session_id,
            user_id=state.user_id,
            snapshot=snapshot_dumps(state),
            created_at=now,
            updated_at=now,
        )

        def insert(conn: sqlite3.Connection):
            exists = conn.execute(
                "SELECT 1 FROM users WHERE user_id = ?", (record.user_id,)
            ).fetchone()
            if exists is None:
                raise NotFound(f"user {record.user_id}")
            conn.execute(
                "INSERT INTO conversations"
                " (conversation_id, user_id, snapshot, created_at, updated_at)"
                " VALUES (?, ?, ?, ?, ?)",
                (
                    record.conversation_id,
                    record.user_id,
                    record.snapshot,
                    record.created_at.isoformat(),
                    record.updated_at.isoformat(),
                ),
            )
            return record

        return self._write(insert)

    def get_conversation(self, conversation_id: str) -> ConversationRecord:
        with self._lock:
            row = self._conn.execute(
                "SELECT conversation_id, user_id, snapshot, created_at, updated_at"
                " FROM conversations WHERE conversation_id = ?",
                (conversation_id,),
            ).fetchone()
        if row is None:
            raise NotFound(f"conversation {conversation_id}")
        return ConversationRecord(
            conversation_id=row[0],
            user_id=row[1],
            snapshot=row[2],
            created_at=datetime.fromisoformat(row[3]),
            updated_at=datetime.fromisoformat(row[4]),
        )

    def _save_snapshot_in(self, conn: sqlite3.Connection, conversation_id: str, state: SessionState) -> None:
        cursor = conn.execute(
            "UPDATE conversations SET snapshot = ?, updated_at = ?"
            " WHERE conversation_id = ?",
            (snapshot_dumps(state), self._clock().isoformat(), conversation_id),
        )
        if cursor.rowcount == 0:
            raise NotFound(f"conversation {conversation_id}")

    def save_snapshot(self, conversation_id: str, state: SessionState) -> None:
        self._write(lambda conn: self._save_snapshot_in(conn, conversation_id, state))

    def load_snapshot(self, conversation_id: str) -> SessionState:
        return snapshot_loads(self.get_conversation(conversation_id).snapshot)

    # -- messages ---------------------------------------------------------
    def _insert_message_in(
        self, conn: sqlite3.Connection, conversation_id: str, role: str, stage: Stage, content: str
    ) -> MessageRecord:
        if role not in ROLES:
            raise ValueError(f"unknown role: {role}")
        exists = conn.execute(
            "SELECT 1 FROM conversations WHERE conversation_id = ?",
            (conversation_id,),
        ).fetchone()
        if exists is None:
            raise NotFound(f"conversation {conversation_id}")
        (seq,) = conn.execute(
            "SELECT COALESCE(MAX(seq), 0) + 1 FROM messages WHERE conversation_id = ?",
            (conversation_id,),
        ).fetchone()
        record = MessageRecord(
            message_id=uuid.uuid4().hex,
            conversation_id=conversation_id,
            role=role,
            stage=stage,
            content=content,
            created_at=self._clock(),
            seq=seq,
        )
        conn.execute(
            "INSERT INTO messages"
            " (message_id, conversation_id, role, stage, content, created_at, seq)"
            " VALUES (?, ?, ?, ?, ?, ?, ?)",
            (
                record.message_id,
                record.conversation_id,
                record.role,
                record.stage.title,
                record.content,
                record.created_at.isoformat(),
                record.seq,
            ),
        )
        return record

    def save_message(self, conversation_id: str, role: str, stage: Stage, content: str) -> MessageRecord:
        return self._write(
            lambda conn: self._insert_message_in(conn, conversation_id, role, stage, content)
        )

    def load_messages(self, conversation_id: str, stage: Stage | None = None) -> list[MessageRecord]:
        query = (
            "SELECT message_id, conversation_id, role, stage, content, created_at, seq"
            " FROM messages WHERE conversation_id = ?"
        )
        params: list[object] = [conversation_id]
        if stage is not None:
            query += " AND stage = ?"
            params.append(stage.title)
        query += " ORDER BY seq ASC"
        with self._lock:
            exists = self._conn.execute(
                "SELECT 1 FROM conversations WHERE conversation_id = ?",
                (conversation_id,),
            ).fetchone()
            if exists is None:
                raise NotFound(f"conversation {conversation_id}")
            rows = self._conn.execute(query, params).fetchall()
        return [
            MessageRecord(
                message_id=row[0],
                conversation_id=row[1],
                role=row[2],
                stage=Stage.from_title(row[3]),
                content=row[4],
                created_at=datetime.fromisoformat(row[5]),
                seq=row[6],
            )
            for row in rows
        ]

    def append_interaction(
        self, conversation_id: str, turns: Sequence[Turn], state: SessionState
    ) -> list[MessageRecord]:
        def apply(conn: sqlite3.Connection):
            records = [
                self._insert_message_in(conn, conversation_id, role, stage, content)
                for role, stage, content in turns
            ]
            self._save_snapshot_in(conn, conversation_id, state)
            return records

        return self._write(apply)
