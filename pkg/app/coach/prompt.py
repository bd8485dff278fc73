"""
Шаблоны промптов и сборка PromptDoc из наблюдения
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass
from pathlib import Path

from app.errors import ConfigurationError
from app.plant.models import Observation

from .models import PromptDoc

PLACEHOLDERS = frozenset(
    {
        "velocity",
        "displacement",
        "steer",
        "head",
        "envelope_lower",
        "envelope_upper",
        "lane",
        "head_checked",
        "desirable",
        "course_length",
    }
)
REQUIRED_PLACEHOLDERS = frozenset({"velocity", "displacement"})

_SECTION = re.compile(r"^###\s*(system|user)\s*$", re.IGNORECASE | re.MULTILINE)


def _placeholders(text: str, source: str) -> set[str]:
    names: set[str] = set()
    try:
        for _, field, spec, conversion in string.Formatter().parse(text):
            if field is None:
                continue
            if spec or conversion or not field.isidentifier():
                raise ConfigurationError(f"{source}: unsupported placeholder {{{field}}}")
            names.add(field)
    except ValueError as e:
        raise ConfigurationError(f"{source}: malformed template ({e})") from e
    return names


@dataclass(frozen=True)
class PromptTemplate:
    """Системная и пользовательская части промпта с именованными полями"""

    system: str
    user: str
    max_tokens: int = 30
    temperature: float = 0.0
    source: str = "<inline>"

    def __post_init__(self) -> None:
        used = _placeholders(self.system, self.source) | _placeholders(self.user, self.source)
        unknown = used - PLACEHOLDERS
        if unknown:
            raise ConfigurationError(
                f"{self.source}: unknown placeholders {', '.join(sorted(unknown))}"
            )
        missing = REQUIRED_PLACEHOLDERS - _placeholders(self.user, self.source)
        if missing:
            raise ConfigurationError(
                f"{self.source}: user section must use {', '.join(sorted(missing))}"
            )

    @classmethod
    def parse(cls, text: str, *, source: str = "<inline>", **options) -> PromptTemplate:
        parts = _SECTION.split(text)
        sections: dict[str, str] = {}
        # split даёт [преамбула, имя, тело, имя, тело, ...]
        for name, body in zip(parts[1::2], parts[2::2]):
            sections[name.lower()] = body.strip("\n")
        if set(sections) != {"system", "user"}:
            raise ConfigurationError(f"{source}: template needs '### system' and '### user' sections")
        return cls(system=sections["system"], user=sections["user"], source=source, **options)

    @classmethod
    def load(cls, path: str | Path, **options) -> PromptTemplate:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"Cannot read prompt template {path}: {e}") from e
        return cls.parse(text, source=str(path), **options)


def _values(observation: Observation) -> dict[str, str]:
    state = observation.state
    return {
        "velocity": f"{state.velocity:.2f}",
        "displacement": f"{state.displacement:.2f}",
        "steer": str(state.steer),
        "head": str(state.head),
        "envelope_lower": f"{observation.lower:.2f}",
        "envelope_upper": f"{observation.upper:.2f}",
        "desirable": f"{observation.desirable:.2f}",
        "lane": str(observation.lane),
        "head_checked": "yes" if observation.head_checked else "no",
        "course_length": f"{observation.course_length:.2f}",
    }


def build_prompt(template: PromptTemplate, observation: Observation) -> PromptDoc:
    """Детерминированная сборка промпта: одинаковый вход даёт одинаковые байты."""
    values = _values(observation)
    return PromptDoc(
        system_text=template.system.format(**values),
        user_text=template.user.format(**values),
        max_tokens=template.max_tokens,
        temperature=template.temperature,
        context=observation,
    )
