"""
Общий интерфейс бэкендов инференса
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.coach.models import PromptDoc


class Completion(BaseModel):
    """Результат одного вызова модели.

    ``error`` заполнен, если ответ не получен (транспорт, HTTP, тело ответа).
    """

    model_config = ConfigDict(frozen=True)

    raw: str = ""
    latency_ns: int = Field(0, ge=0)
    error: Optional[str] = None
    digest_mismatch: bool = False

    @property
    def ok(self) -> bool:
        return self.error is None


class AgentBackend(ABC):
    """Поставщик ответов коуча"""

    name: str = "backend"
    deterministic: bool = True

    @abstractmethod
    def complete(self, prompt: PromptDoc) -> Completion:
        ...

    def close(self) -> None:
        """Освободить ресурсы (по умолчанию ничего)."""
