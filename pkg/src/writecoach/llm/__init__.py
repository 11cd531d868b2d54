from .client import HttpTransport, ProviderUnavailable, Transport, TransportError, complete
from .config import ProviderConfig
from .memory import MemoryWindow, assemble_context
from .scripted import ScriptedTransport
from .wire import LlmResponse, MalformedResponse, decode_response, encode_request

__all__ = [
    "HttpTransport",
    "LlmResponse",
    "MalformedResponse",
    "MemoryWindow",
    "ProviderConfig",
    "ProviderUnavailable",
    "ScriptedTransport",
    "Transport",
    "TransportError",
    "assemble_context",
    "complete",
    "decode_response",
    "encode_request",
]
