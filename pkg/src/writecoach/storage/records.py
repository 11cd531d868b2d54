"""Row types for the three stored tables: users, conversations, messages."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from ..stages import Stage

ROLES = ("user", "assistant", "system")


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    username: str
    password_hash: str
    created_at: datetime


@dataclass(frozen=True)
class ConversationRecord:
    """One conversation per writing-task session; ``snapshot`` is the
    serialized session state, always deserializable."""

    conversation_id: str
    user_id: str
    snapshot: str
    created_at: datetime
    updated_at: datetime


@dataclass(frozen=True)
class MessageRecord:
    """(conversation_id, seq) is unique; seq gives the total order.
    Gaps in seq are allowed."""

    message_id: str
    conversation_id: str
    role: str
    stage: Stage
    content: str
    created_at: datetime
    seq: int

    @property
    def stage_name(self) -> str:
        return self.stage.title
