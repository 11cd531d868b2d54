"""Process configuration from WRITECOACH_* environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .llm.config import ProviderConfig

_TRUTHY = {"1", "true", "yes", "on"}


def _env(environ: dict[str, str], key: str, default: str) -> str:
    return environ.get(f"WRITECOACH_{key}", default)


@dataclass(frozen=True)
class AppConfig:
    """Everything the process needs; secrets stay out of repr."""

    db_path: str = ":memory:"
    host: str = "127.0.0.1"
    port: int = 8000
    cors_origins: tuple[str, ...] = ()
    provider: str = "scripted"  # "scripted" | "http"
    base_url: str = "http://scripted.local"
    api_key: str = field(default="scripted", repr=False)
    model: str = "scripted"
    temperature: float = 0.7
    timeout_seconds: float = 30.0
    max_retries: int = 2
    context_pairs: int = 8
    token_ttl_seconds: float = 24 * 3600
    resource_rationales: bool = False

    def __post_init__(self):
        if self.provider not in ("scripted", "http"):
            raise ValueError(f"provider must be scripted or http, got {self.provider!r}")

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> "AppConfig":
        env = dict(os.environ) if environ is None else environ
        cors = _env(env, "CORS", "")
        return cls(
            db_path=_env(env, "DB", ":memory:"),
            host=_env(env, "HOST", "127.0.0.1"),
            port=int(_env(env, "PORT", "8000")),
            cors_origins=tuple(o.strip() for o in cors.split(",") if o.strip()),
            provider=_env(env, "PROVIDER", "scripted"),
            base_url=_env(env, "BASE_URL", "http://scripted.local"),
            api_key=_env(env, "API_KEY", "scripted"),
            model=_env(env, "MODEL", "scripted"),
            temperature=float(_env(env, "TEMPERATURE", "0.7")),
            timeout_seconds=float(_env(env, "TIMEOUT", "30")),
            max_retries=int(_env(env, "MAX_RETRIES", "2")),
            context_pairs=int(_env(env, "CONTEXT_PAIRS", "8")),
            token_ttl_seconds=float(_env(env, "TOKEN_TTL", str(24 * 3600))),
            resource_rationales=_env(env, "RATIONALES", "").lower() in _TRUTHY,
        )

    def provider_config(self) -> ProviderConfig:
        return ProviderConfig(
            base_url=self.base_url,
            api_key=self.api_key,
            model=self.model,
            temperature=self.temperature,
            timeout_seconds=self.timeout_seconds,
            max_retries=self.max_retries,
            context_pairs=self.context_pairs,
        )
