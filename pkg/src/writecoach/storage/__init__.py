"""Durable storage: users, conversations, messages, and session snapshots."""

from .base import (
    AuthFailed,
    DuplicateUsername,
    NotFound,
    StorageUnavailable,
    Store,
    artifacts_from_state,
)
from .memory import InMemoryStore
from .records import ConversationRecord, MessageRecord, UserRecord
from .snapshots import MalformedSnapshot, snapshot_dumps, snapshot_loads
from .sqlite import SqliteStore

__all__ = [
    "AuthFailed",
    "ConversationRecord",
    "DuplicateUsername",
    "InMemoryStore",
    "MalformedSnapshot",
    "MessageRecord",
    "NotFound",
    "SqliteStore",
    "StorageUnavailable",
    "Store",
    "UserRecord",
    "artifacts_from_state",
    "snapshot_dumps",
    "snapshot_loads",
]
