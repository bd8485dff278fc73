"""
Воспроизведение записанной трассы инференса
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from loguru import logger

from app.coach.models import PromptDoc
from app.errors import ReplayDivergenceError, ReplayExhaustedError

from .base import AgentBackend, Completion
from .records import InferenceRecord, read_records


class ReplayBackend(AgentBackend):
    """Отдаёт записи строго по порядку.

    Несовпадение дайджеста промпта помечается в ответе (прогон продолжается)
    или, в строгом режиме, прерывает прогон. Неиспользованные записи в конце
    прогона дают предупреждение, в строгом режиме сбой.
    """

    name = "replay"

    def __init__(self, records: Sequence[InferenceRecord], *, strict: bool = False) -> None:
        self.records = list(records)
        self.strict = strict
        self.cursor = 0
        self.faulted = False

    @classmethod
    def from_file(cls, path: str | Path, *, strict: bool = False) -> ReplayBackend:
        return cls(read_records(path), strict=strict)

    @property
    def remaining(self) -> int:
        return len(self.records) - self.cursor

    def complete(self, prompt: PromptDoc) -> Completion:
        if self.cursor >= len(self.records):
            self.faulted = True
            raise ReplayExhaustedError(
                f"Inference trace exhausted after {len(self.records)} records"
            )
        record = self.records[self.cursor]
        self.cursor += 1

        digest = prompt.digest()
        mismatch = record.prompt_digest != digest
        if mismatch and self.strict:
            self.faulted = True
            raise ReplayDivergenceError(
                f"Record {record.index}: prompt digest {digest} != recorded {record.prompt_digest}"
            )
        return Completion(
            raw=record.raw_response,
            latency_ns=record.latency_ns,
            error=record.error,
            digest_mismatch=mismatch,
        )

    def close(self) -> None:
        if self.faulted or not self.remaining:
            return
        message = f"{self.remaining} of {len(self.records)} inference records were never replayed"
        if self.strict:
            raise ReplayDivergenceError(message)
        logger.warning(f"⚠️ {message}")
