"""Chat-completions wire codec.

Requests carry exactly the fields ``model``, ``messages`` and ``temperature``.
Message order is fixed: system instructions, one system-role context block
rendering the memory window, the window's recent turns, then the user
message. Responses are read tolerantly: unknown fields are ignored, but a
response without extractable text is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CoachError
from ..prompts.render import PromptBundle, context_block
from .config import ProviderConfig
from .memory import MemoryWindow


class MalformedResponse(CoachError):
    code = "malformed_response"


@dataclass(frozen=True)
class LlmResponse:
    content: str
    provider_latency: float = 0.0
    attempts: int = 1


def encode_request(
    bundle: PromptBundle, window: MemoryWindow, config: ProviderConfig
) -> dict:
    messages = [{"role": "system", "content": bundle.system_message}]
    if window.pinned_artifacts:
        messages.append(
            {"role": "system", "content": context_block(list(window.pinned_artifacts))}
        )
    for user_text, assistant_text in window.recent_turns:
        messages.append({"role": "user", "content": user_text})
        messages.append({"role": "assistant", "content": assistant_text})
    messages.append({"role": "user", "content": bundle.user_message})
    return {
        "model": config.model,
        "messages": messages,
        "temperature": config.temperature,
    }


def decode_response(document: dict) -> LlmResponse:
    """Extract the first choice's message content; reject empty documents."""
    if not isinstance(document, dict):
        raise MalformedResponse("response is not an object")
    choices = document.get("choices")
    if not isinstance(choices, list) or not choices:
        raise MalformedResponse("response has no choices")
    first = choices[0]
    if not isinstance(first, dict):
        raise MalformedResponse("choice is not an object")
    message = first.get("message")
    if not isinstance(message, dict):
        raise MalformedResponse("choice has no message")
    content = message.get("content")
    if not isinstance(content, str):
        raise MalformedResponse("message content is missing or not text")
    return LlmResponse(content=content)
