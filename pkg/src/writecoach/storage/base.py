"""Store interface shared by the in-memory and SQLite backends."""

from __future__ import annotations

import abc
from collections.abc import Sequence

from ..errors import CoachError
from ..session import SessionState, current_essay
from ..stages import Stage

# (role, stage, content) triples appended as one atomic unit.
Turn = tuple[str, Stage, str]


class StorageError(CoachError):
    code = "storage_error"


class DuplicateUsername(StorageError):
    code = "duplicate_username"


class NotFound(StorageError):
    code = "not_found"


class AuthFailed(StorageError):
    code = "auth_failed"


class StorageUnavailable(StorageError):
    code = "storage_unavailable"


def artifacts_from_state(state: SessionState) -> dict[str, str]:
    """Project the durable artifacts out of a session snapshot.

    Keys are present only when the artifact exists; a fresh session yields
    just the assignment.
    """
    out = {"assignment": state.assignment_prompt}
    key_questions = state.latest_text(Stage.PRE_WRITING)
    if key_questions is not None:
        out["key_questions"] = key_questions
    thesis = state.latest_text(Stage.THESIS_STATEMENT)
    if thesis is not None:
        out["thesis"] = thesis
    outline = state.latest_text(Stage.OUTLINE_BUILDING)
    if outline is not None:
        out["outline"] = outline
    essay = current_essay(state)
    if essay is not None:
        out["essay"] = essay
    return out


class Store(abc.ABC):
    """CRUD suite over users, conversations, and messages.

    Implementations guarantee: usernames unique; (conversation_id, seq)
    unique with seq strictly increasing per conversation; load_messages in
    seq-ascending order; snapshot saves atomic (a reader sees the old or the
    new document, never a torn one); ``append_interaction`` all-or-nothing.
    """

    # -- users ------------------------------------------------------------
    @abc.abstractmethod
    def create_user(self, username: str, password: str):
        """Create a user; DuplicateUsername if the name is taken."""

    @abc.abstractmethod
    def authenticate(self, username: str, password: str) -> str:
        """Return the user_id; AuthFailed on unknown name or bad password."""

    @abc.abstractmethod
    def get_user(self, user_id: str):
        """Return the UserRecord; NotFound for unknown ids."""

    # -- conversations ----------------------------------------------------
    @abc.abstractmethod
    def create_conversation(self, state: SessionState):
        """Persist a new conversation keyed by ``state.session_id``."""

    @abc.abstractmethod
    def get_conversation(self, conversation_id: str):
        """Return the ConversationRecord; NotFound for unknown ids."""

    @abc.abstractmethod
    def save_snapshot(self, conversation_id: str, state: SessionState) -> None:
        """Overwrite the conversation's snapshot atomically."""

    @abc.abstractmethod
    def load_snapshot(self, conversation_id: str) -> SessionState:
        """Deserialize the stored snapshot; NotFound for unknown ids."""

    # -- messages ---------------------------------------------------------
    @abc.abstractmethod
    def save_message(self, conversation_id: str, role: str, stage: Stage, content: str):
        """Append one message, assigning the next seq; returns the record."""

    @abc.abstractmethod
    def load_messages(self, conversation_id: str, stage: Stage | None = None):
        """All messages in seq order, optionally filtered to one stage."""

    @abc.abstractmethod
    def append_interaction(
        self, conversation_id: str, turns: Sequence[Turn], state: SessionState
    ):
        """Append messages and overwrite the snapshot as one atomic unit."""

    # -- projections -------------------------------------------------------
    def long_term_artifacts(self, conversation_id: str) -> dict[str, str]:
        """Labeled artifacts from the stored snapshot (assignment, and when
        present: key_questions, thesis, outline, essay)."""
        return artifacts_from_state(self.load_snapshot(conversation_id))
