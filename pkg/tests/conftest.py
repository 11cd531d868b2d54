from __future__ import annotations

import pytest

from writecoach.engine import SessionEngine
from writecoach.llm import ProviderConfig, ScriptedTransport
from writecoach.service import WritingCoach
from writecoach.storage import InMemoryStore, SqliteStore


@pytest.fixture
def provider_config() -> ProviderConfig:
    return ProviderConfig(
        base_url="http://scripted.local", api_key="test-secret-key", model="scripted"
    )


@pytest.fixture
def scripted_engine(provider_config) -> SessionEngine:
    return SessionEngine(provider_config, ScriptedTransport(), sleep=lambda _s: None)


@pytest.fixture
def coach(scripted_engine) -> WritingCoach:
    return WritingCoach(InMemoryStore(), scripted_engine)


@pytest.fixture(params=["memory", "sqlite"])
def store(request, tmp_path):
    if request.param == "memory":
        yield InMemoryStore()
    else:
        s = SqliteStore(str(tmp_path / "coach.db"))
        yield s
        s.close()
