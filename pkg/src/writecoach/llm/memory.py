"""Short-term context window assembled per request.

Long-lived artifacts (assignment, key questions, thesis, outline) are pinned
into every request; conversational back-and-forth is bounded to the last K
user/assistant pairs of the current stage only, so chatter from earlier
stages never leaks forward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol

from ..session import SessionState
from ..stages import Stage


class HistoryMessage(Protocol):
    role: str
    stage_name: str
    content: str


@dataclass(frozen=True)
class MemoryWindow:
    pinned_artifacts: tuple[tuple[str, str], ...]  # (label, text), ordered
    recent_turns: tuple[tuple[str, str], ...]  # (user_text, assistant_text) pairs

    @property
    def empty(self) -> bool:
        return not self.pinned_artifacts and not self.recent_turns


_PINNED = (
    ("ASSIGNMENT", lambda s: s.assignment_prompt),
    ("KEY QUESTIONS", lambda s: s.latest_text(Stage.PRE_WRITING)),
    ("THESIS", lambda s: s.latest_text(Stage.THESIS_STATEMENT)),
    ("OUTLINE", lambda s: s.latest_text(Stage.OUTLINE_BUILDING)),
)


def assemble_context(
    session: SessionState, history: Iterable[HistoryMessage], k: int
) -> MemoryWindow:
    """Pin available long-term artifacts and keep the last ``k`` pairs of the
    current stage. ``history`` must be in chronological order."""
    pinned = tuple(
        (label, text) for label, get in _PINNED if (text := get(session)) is not None
    )

    pairs: list[tuple[str, str]] = []
    pending_user: str | None = None
    for message in history:
        if message.stage_name != session.current.title:
            continue
        if message.role == "user":
            pending_user = message.content
        elif message.role == "assistant" and pending_user is not None:
            pairs.append((pending_user, message.content))
            pending_user = None
    return MemoryWindow(pinned_artifacts=pinned, recent_turns=tuple(pairs[-k:] if k else ()))
