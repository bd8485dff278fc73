"""
Разбор параметра --backend и создание бэкенда
"""
from __future__ import annotations

from app._compat import StrEnum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict

from app.config import settings
from app.errors import ConfigurationError
from app.scenarios.models import ScenarioSpec

from .base import AgentBackend
from .ollama_service import OllamaService
from .oracle import OracleBackend
from .records import RecordingBackend
from .replay import ReplayBackend


class BackendKind(StrEnum):
    ORACLE = "oracle"
    REPLAY = "replay"
    LIVE = "live"


class BackendConfig(BaseModel):
    """Разобранное значение ``oracle | replay:<file> | live[:<endpoint>,<model>]``"""

    model_config = ConfigDict(frozen=True)

    kind: BackendKind
    trace_path: Optional[Path] = None
    endpoint: Optional[str] = None
    model: Optional[str] = None

    @property
    def deterministic(self) -> bool:
        return self.kind != BackendKind.LIVE

    def describe(self) -> str:
        if self.kind == BackendKind.REPLAY:
            return f"replay:{self.trace_path}"
        if self.kind == BackendKind.LIVE:
            return f"live:{self.endpoint},{self.model}"
        return "oracle"


def parse_backend(
    value: str, *, endpoint: Optional[str] = None, model: Optional[str] = None
) -> BackendConfig:
    kind_text, _, rest = (value or "").partition(":")
    try:
        kind = BackendKind(kind_text.strip().lower())
    except ValueError as e:
        raise ConfigurationError(
            f"Unknown backend {value!r}: use oracle, replay:<file> or live:<endpoint>,<model>"
        ) from e

    if kind == BackendKind.ORACLE:
        if rest:
            raise ConfigurationError("oracle backend takes no argument")
        return BackendConfig(kind=kind)

    if kind == BackendKind.REPLAY:
        if not rest:
            raise ConfigurationError("replay backend requires a trace file: replay:<file>")
        return BackendConfig(kind=kind, trace_path=Path(rest))

    if rest:
        live_endpoint, sep, live_model = rest.rpartition(",")
        if not sep or not live_endpoint or not live_model:
            raise ConfigurationError("live backend format is live:<endpoint>,<model>")
        endpoint, model = live_endpoint, live_model
    endpoint = (endpoint or settings.ollama_endpoint).strip().rstrip("/")
    model = (model or settings.ollama_model).strip()
    if not endpoint or not model:
        raise ConfigurationError("live backend requires an endpoint and a model")
    return BackendConfig(kind=kind, endpoint=endpoint, model=model)


def create_backend(
    config: BackendConfig,
    spec: ScenarioSpec,
    *,
    strict_replay: bool = False,
    record_path: Optional[Path] = None,
    oracle_latency_ms: Optional[float] = None,
) -> AgentBackend:
    """Новый экземпляр бэкенда; каждый прогон получает свой."""
    backend: AgentBackend
    if config.kind == BackendKind.ORACLE:
        backend = OracleBackend(spec, latency_ms=oracle_latency_ms)
    elif config.kind == BackendKind.REPLAY:
        backend = ReplayBackend.from_file(config.trace_path, strict=strict_replay)
    else:
        backend = OllamaService(config.endpoint, config.model)

    if record_path is not None:
        backend = RecordingBackend(backend, record_path)
    return backend
