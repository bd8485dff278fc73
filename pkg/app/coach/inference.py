"""
LLMInference: вызов бэкенда, проверка дедлайна, разбор ответа и fallback
"""
from __future__ import annotations

import math
from app._compat import StrEnum
from typing import TYPE_CHECKING, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict

from app.errors import ParseError
from app.plant.models import Brake, Observation
from app.runtime import Reactor, Runtime, Tag, TraceKind

from .models import CoachOutput, PromptDoc
from .parser import parse_response
from .prompt import PromptTemplate, build_prompt

if TYPE_CHECKING:
    from app.services.base import AgentBackend

NS_PER_MS = 1_000_000


class InferenceStatus(StrEnum):
    OK = "ok"
    DEADLINE_MISS = "deadline_miss"
    PARSE_ERROR = "parse_error"


class InferenceResult(BaseModel):
    """Полезная нагрузка действия ``result``.

    ``elapsed_ns`` читает проверка дедлайна в рантайме; None означает,
    что ответ так и не был получен.
    """

    model_config = ConfigDict(frozen=True)

    status: InferenceStatus
    latency_ns: int
    elapsed_ns: Optional[int]
    delay_ns: int
    digest: str
    output: Optional[CoachOutput] = None
    raw: str = ""
    error: Optional[str] = None
    digest_mismatch: bool = False

    def canonical(self) -> str:
        return f"status={self.status} latency_ns={self.latency_ns} delay_ns={self.delay_ns}"


def quantize_latency_ns(latency_ns: int) -> int:
    """Латентность, округлённая вверх до целой миллисекунды."""
    return math.ceil(latency_ns / NS_PER_MS) * NS_PER_MS


def infer(prompt: PromptDoc, backend: AgentBackend, deadline_ns: int) -> InferenceResult:
    """Один вызов модели; ошибка транспорта трактуется как пропуск дедлайна."""
    completion = backend.complete(prompt)
    common = dict(
        latency_ns=completion.latency_ns,
        digest=prompt.digest(),
        raw=completion.raw,
        digest_mismatch=completion.digest_mismatch,
    )
    if completion.error is not None:
        return InferenceResult(
            status=InferenceStatus.DEADLINE_MISS,
            elapsed_ns=None,
            delay_ns=deadline_ns,
            error=completion.error,
            **common,
        )
    if completion.latency_ns > deadline_ns:
        return InferenceResult(
            status=InferenceStatus.DEADLINE_MISS,
            elapsed_ns=completion.latency_ns,
            delay_ns=deadline_ns,
            **common,
        )

    delay_ns = min(quantize_latency_ns(completion.latency_ns), deadline_ns)
    try:
        output = parse_response(completion.raw)
    except ParseError as e:
        return InferenceResult(
            status=InferenceStatus.PARSE_ERROR,
            elapsed_ns=completion.latency_ns,
            delay_ns=delay_ns,
            error=str(e),
            **common,
        )
    return InferenceResult(
        status=InferenceStatus.OK,
        elapsed_ns=completion.latency_ns,
        delay_ns=delay_ns,
        output=output,
        **common,
    )


class LLMInference(Reactor):
    """Запускает инференс на каждом наблюдении.

    Пока предыдущий результат логически в полёте, новый запуск пропускается.
    """

    def __init__(
        self,
        runtime: Runtime,
        parent: Reactor,
        *,
        backend: AgentBackend,
        template: PromptTemplate,
        deadline_ns: int,
    ) -> None:
        super().__init__("inference", runtime, parent)
        self.observation = self.input("observation", Observation)
        self.ctrl = self.output("ctrl", CoachOutput)
        self.fallback_out = self.output("fallback", Brake)
        self.result = self.action("result")

        self.backend = backend
        self.template = template
        self.deadline_ns = deadline_ns
        self.in_flight_until: Optional[Tag] = None
        self.calls = 0

        self.reaction(self.on_observation, triggers=[self.observation], effects=[self.result])
        self.reaction(
            self.on_result,
            triggers=[self.result],
            effects=[self.ctrl, self.fallback_out],
            deadline_ns=deadline_ns,
            handler=self.on_deadline_miss,
        )

    def on_observation(self) -> None:
        if self.in_flight_until is not None and self.in_flight_until > self.tag:
            self.record(TraceKind.SKIPPED, f"in_flight_until={self.in_flight_until}")
            return

        prompt = build_prompt(self.template, self.observation.value)
        result = infer(prompt, self.backend, self.deadline_ns)
        index = self.calls
        self.calls += 1

        if result.digest_mismatch:
            logger.warning(f"⚠️ Prompt digest mismatch on inference #{index}")
            self.record(TraceKind.DIGEST_MISMATCH, f"index={index} digest={result.digest}")
        self.record(
            TraceKind.INFERENCE,
            f"index={index} digest={result.digest} latency_ns={result.latency_ns} "
            f"status={result.status}",
        )
        self.in_flight_until = self.result.schedule(result.delay_ns, result)

    def on_result(self) -> None:
        result: InferenceResult = self.result.value
        if result.status is InferenceStatus.PARSE_ERROR:
            self.record(TraceKind.PARSE_ERROR, f"{result.error}: {result.raw}")
            self.fallback("parse_error")
            return
        self.ctrl.set(result.output)

    def on_deadline_miss(self) -> None:
        result: InferenceResult = self.result.value
        if result.error:
            logger.warning(f"⚠️ Backend error treated as deadline miss: {result.error}")
        self.fallback("deadline_miss")

    def fallback(self, reason: str) -> None:
        """Экстренное торможение через порт fallback (задержка 200 мс до автомобиля)."""
        self.fallback_out.set(Brake.EMERGENCY)
        self.record(TraceKind.FALLBACK, f"reason={reason}")
