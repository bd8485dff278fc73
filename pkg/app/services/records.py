"""
Трасса инференса: запись и чтение InferenceRecord
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, TextIO

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from app.coach.models import PromptDoc
from app.errors import ConfigurationError
from app.runtime.trace import escape_field, unescape_field

from .base import AgentBackend, Completion


class InferenceRecord(BaseModel):
    """Один вызов модели: строка ``index\\tdigest\\tlatency_ns\\traw[\\terror]``"""

    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0)
    prompt_digest: str
    latency_ns: int = Field(ge=0)
    raw_response: str = ""
    error: Optional[str] = None

    def serialize(self) -> str:
        fields = [
            str(self.index),
            self.prompt_digest,
            str(self.latency_ns),
            escape_field(self.raw_response),
        ]
        if self.error is not None:
            fields.append(escape_field(self.error))
        return "\t".join(fields)

    @classmethod
    def parse(cls, line: str) -> InferenceRecord:
        fields = line.rstrip("\n").split("\t")
        if len(fields) not in (4, 5):
            raise ValueError(f"expected 4 or 5 fields, got {len(fields)}")
        return cls(
            index=int(fields[0]),
            prompt_digest=fields[1],
            latency_ns=int(fields[2]),
            raw_response=unescape_field(fields[3]),
            error=unescape_field(fields[4]) if len(fields) == 5 else None,
        )


def read_records(path: str | Path) -> list[InferenceRecord]:
    """Читает трассу инференса; индексы должны идти строго по порядку."""
    path = Path(path)
    try:
        text = path.read_bytes().decode("utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read inference trace {path}: {e}") from e

    records: list[InferenceRecord] = []
    for number, line in enumerate(text.split("\n"), start=1):
        if not line:
            continue
        try:
            record = InferenceRecord.parse(line)
        except ValueError as e:
            raise ConfigurationError(f"{path}:{number}: malformed record ({e})") from e
        if record.index != len(records):
            raise ConfigurationError(
                f"{path}:{number}: expected index {len(records)}, got {record.index}"
            )
        records.append(record)
    return records


def write_records(path: str | Path, records: Iterable[InferenceRecord]) -> None:
    Path(path).write_bytes("".join(r.serialize() + "\n" for r in records).encode("utf-8"))


class RecordingBackend(AgentBackend):
    """Обёртка над любым бэкендом: каждый вызов пишется в трассу инференса"""

    def __init__(self, inner: AgentBackend, path: str | Path) -> None:
        self.inner = inner
        self.path = Path(path)
        self.name = f"{inner.name}+record"
        self.deterministic = inner.deterministic
        self.records: list[InferenceRecord] = []
        # файл открывается при первом вызове
        self._file: Optional[TextIO] = None
        self.closed = False

    def complete(self, prompt: PromptDoc) -> Completion:
        completion = self.inner.complete(prompt)
        record = InferenceRecord(
            index=len(self.records),
            prompt_digest=prompt.digest(),
            latency_ns=completion.latency_ns,
            raw_response=completion.raw,
            error=completion.error,
        )
        self.records.append(record)
        out = self._open()
        out.write(record.serialize() + "\n")
        out.flush()
        return completion

    def _open(self) -> TextIO:
        if self._file is None:
            self._file = self.path.open("w", encoding="utf-8", newline="\n")
        return self._file

    def close(self) -> None:
        if self._file is None and not self.closed:
            # прогон без вызовов: пустая трасса
            self._open()
        if self._file is not None:
            self._file.close()
            self._file = None
            self.closed = True
            logger.info(f"💾 Recorded {len(self.records)} inference records to {self.path}")
        self.inner.close()
