"""
Трасса прогона: каноническая сериализация для проверки детерминизма.

Формат строки: ``tag_ns.microstep<TAB>source<TAB>kind<TAB>payload``, UTF-8, ``\\n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from app._compat import StrEnum
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .tag import Tag


class TraceKind(StrEnum):
    PORT_WRITE = "port-write"
    TIMER_FIRE = "timer-fire"
    MODE_TRANSITION = "mode-transition"
    DEADLINE_MISS = "deadline-miss"
    FALLBACK = "fallback"
    INSTRUCTION = "instruction"
    ACTUATION = "actuation"
    SUPPRESSED = "suppressed"
    INFERENCE = "inference"
    PARSE_ERROR = "parse-error"
    SKIPPED = "skipped"
    DIGEST_MISMATCH = "digest-mismatch"
    BRAKE_ENGAGED = "brake-engaged"
    DIRECTIVE = "directive"


def escape_field(text: str) -> str:
    """Экранирует обратный слэш, TAB и переводы строк."""
    return (
        text.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\r", "\\r")
        .replace("\n", "\\n")
    )


def unescape_field(text: str) -> str:
    out: list[str] = []
    chars = iter(text)
    for ch in chars:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(chars, "")
        out.append({"n": "\n", "t": "\t", "r": "\r", "\\": "\\"}.get(nxt, nxt))
    return "".join(out)


@dataclass(frozen=True, slots=True)
class TraceEvent:
    tag: Tag
    source: str
    kind: TraceKind
    payload: str = ""

    def serialize(self) -> str:
        return f"{self.tag}\t{self.source}\t{self.kind}\t{escape_field(self.payload)}"

    @classmethod
    def parse(cls, line: str) -> TraceEvent:
        stamp, source, kind, payload = line.rstrip("\n").split("\t", 3)
        time_ns, microstep = stamp.split(".")
        return cls(Tag(int(time_ns), int(microstep)), source, TraceKind(kind), unescape_field(payload))


class Divergence(NamedTuple):
    line: int  # номер строки с 1
    left: str | None
    right: str | None


class Trace:
    """Упорядоченная трасса одного прогона"""

    def __init__(self, events: Iterable[TraceEvent] = ()) -> None:
        self.events: list[TraceEvent] = list(events)

    def append(self, event: TraceEvent) -> None:
        self.events.append(event)

    def __iter__(self) -> Iterator[TraceEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def of_kind(self, *kinds: TraceKind) -> list[TraceEvent]:
        return [e for e in self.events if e.kind in kinds]

    def lines(self) -> list[str]:
        return [e.serialize() for e in self.events]

    def serialize(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def to_bytes(self) -> bytes:
        return self.serialize().encode("utf-8")

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def read(cls, path: str | Path) -> Trace:
        text = Path(path).read_bytes().decode("utf-8")
        return cls(TraceEvent.parse(line) for line in text.split("\n") if line)


def first_divergence(left: Iterable[str], right: Iterable[str]) -> Divergence | None:
    """Первая различающаяся строка двух сериализованных трасс или None."""
    left_lines, right_lines = list(left), list(right)
    for index in range(max(len(left_lines), len(right_lines))):
        a = left_lines[index] if index < len(left_lines) else None
        b = right_lines[index] if index < len(right_lines) else None
        if a != b:
            return Divergence(index + 1, a, b)
    return None
