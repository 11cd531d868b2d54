"""Provider connection settings."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ProviderConfig:
    base_url: str = "http://localhost:8080/v1"
    api_key: str = field(default="", repr=False)  # keep the secret out of repr/logs
    model: str = "default-model"
    temperature: float = 0.7
    timeout_seconds: float = 30.0
    max_retries: int = 2
    context_pairs: int = 8  # K: recent user/assistant pairs kept per request

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature must be in [0, 2], got {self.temperature}")
        if self.timeout_seconds <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.context_pairs < 0:
            raise ValueError("context_pairs must be >= 0")
