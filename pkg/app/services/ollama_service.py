"""
Сервис для работы с локальным Ollama (/api/chat).
"""
from __future__ import annotations

import time
from typing import Any, Callable, Dict, Optional

import requests
from loguru import logger

from app.coach.models import PromptDoc
from app.config import settings
from app.errors import BackendError

from .base import AgentBackend, Completion


class OllamaService(AgentBackend):
    """Живой бэкенд: блокирующий запрос к Ollama-совместимому endpoint.

    Латентность меряется по физическим часам вокруг запроса и дальше
    становится логическим входом симуляции. Любая ошибка транспорта или
    тела ответа возвращается как Completion с заполненным ``error``.
    """

    name = "live"
    deterministic = False

    def __init__(
        self,
        endpoint: Optional[str] = None,
        model: Optional[str] = None,
        *,
        timeout_sec: Optional[float] = None,
        session: Optional[requests.Session] = None,
        clock: Callable[[], int] = time.perf_counter_ns,
    ) -> None:
        self.endpoint = (endpoint or settings.ollama_endpoint).strip().rstrip("/")
        self.model = model or settings.ollama_model
        self.timeout_sec = timeout_sec if timeout_sec is not None else settings.ollama_timeout_sec
        self.session = session or requests.Session()
        self.clock = clock
        if not self.endpoint or not self.model:
            logger.warning("⚠️ Ollama endpoint или модель не заданы, все вызовы завершатся ошибкой")

    @property
    def chat_url(self) -> str:
        return f"{self.endpoint}/api/chat"

    # -------------------- Public API --------------------
    def build_payload(self, prompt: PromptDoc) -> Dict[str, Any]:
        return {
            "model": self.model,
            "messages": [
                {"role": "system", "content": prompt.system_text},
                {"role": "user", "content": prompt.user_text},
            ],
            "stream": False,
            "options": {
                "num_predict": prompt.max_tokens,
                "temperature": prompt.temperature,
            },
        }

    def complete(self, prompt: PromptDoc) -> Completion:
        payload = self.build_payload(prompt)
        started = self.clock()
        try:
            response = self.session.post(self.chat_url, json=payload, timeout=self.timeout_sec)
            response.raise_for_status()
            raw = self._extract_content(response.json())
        except (ValueError, BackendError) as e:
            return self._failure(started, f"body: {e}")
        except requests.RequestException as e:
            return self._failure(started, f"transport: {e}")
        return Completion(raw=raw, latency_ns=max(0, self.clock() - started))

    def check_connection(self) -> bool:
        """Проверка доступности сервера (GET /api/tags)."""
        try:
            response = self.session.get(f"{self.endpoint}/api/tags", timeout=self.timeout_sec)
            response.raise_for_status()
            return True
        except requests.RequestException as e:
            logger.error(f"❌ Ollama недоступен по адресу {self.endpoint}: {e}")
            return False

    def close(self) -> None:
        self.session.close()

    # -------------------- Helpers --------------------
    @staticmethod
    def _extract_content(body: Any) -> str:
        try:
            content = body["message"]["content"]
        except (KeyError, TypeError) as e:
            raise BackendError(f"no message.content in response: {e}") from e
        if not isinstance(content, str):
            raise BackendError("message.content is not a string")
        return content

    def _failure(self, started: int, error: str) -> Completion:
        logger.error(f"❌ Ошибка запроса к Ollama ({self.model}): {error}")
        return Completion(latency_ns=max(0, self.clock() - started), error=error)
