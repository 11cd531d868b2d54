"""Session snapshot codec: SessionState to and from a versioned document.

The serialized form is canonical JSON (sorted keys, no whitespace), so the
same state always produces the same bytes. Every document carries a
``schema_version`` for forward migration.
"""

from __future__ import annotations

import json
from datetime import datetime
from typing import Any

from ..errors import CoachError
from ..session import ArtifactSlot, SessionState
from ..stages import Stage

SCHEMA_VERSION = 1


class MalformedSnapshot(CoachError):
    code = "malformed_snapshot"


def snapshot_to_document(state: SessionState) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "session_id": state.session_id,
        "user_id": state.user_id,
        "assignment_prompt": state.assignment_prompt,
        "current_stage": state.current.title,
        "completed": state.completed,
        "created_at": state.created_at.isoformat(),
        "updated_at": state.updated_at.isoformat(),
        "artifacts": {
            stage.title: {"latest": slot.latest, "history": list(slot.history)}
            for stage, slot in state.artifacts.items()
        },
    }


def snapshot_from_document(doc: dict[str, Any]) -> SessionState:
    try:
        version = doc["schema_version"]
        if version != SCHEMA_VERSION:
            raise MalformedSnapshot(f"unsupported snapshot schema_version: {version}")
        artifacts = {
            Stage.from_title(title): ArtifactSlot(
                latest=slot["latest"], history=tuple(slot["history"])
            )
            for title, slot in doc["artifacts"].items()
        }
        return SessionState(
            session_id=doc["session_id"],
            user_id=doc["user_id"],
            assignment_prompt=doc["assignment_prompt"],
            current=Stage.from_title(doc["current_stage"]),
            artifacts=artifacts,
            created_at=datetime.fromisoformat(doc["created_at"]),
            updated_at=datetime.fromisoformat(doc["updated_at"]),
            completed=doc["completed"],
        )
    except MalformedSnapshot:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSnapshot(f"snapshot document is invalid: {exc}") from exc


def snapshot_dumps(state: SessionState) -> str:
    return json.dumps(
        snapshot_to_document(state), sort_keys=True, separators=(",", ":")
    )


def snapshot_loads(text: str) -> SessionState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSnapshot(f"snapshot is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedSnapshot("snapshot document must be a JSON object")
    return snapshot_from_document(doc)
