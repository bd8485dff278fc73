"""
Разбор инструкций коуча в директивы водителя
"""
from __future__ import annotations

import re
from typing import Optional

from app.runtime import Tag

from .models import Directive, DriverCommand, DriverScript

_LATERAL = r"\b(?:steer\w*|merg\w*|lane|move)\b"

# порядок важен: срабатывает первое совпадение
KEYWORD_TABLE: tuple[tuple[re.Pattern[str], Directive], ...] = (
    (re.compile(r"\bbrak", re.IGNORECASE), Directive.BRAKE_NOW),
    (re.compile(r"\bslow", re.IGNORECASE), Directive.SLOW_DOWN),
    (re.compile(r"\bcheck\b.*\bright\b", re.IGNORECASE), Directive.CHECK_RIGHT),
    (
        re.compile(rf"{_LATERAL}.*\bright\b|\bright\s+lane\b", re.IGNORECASE),
        Directive.STEER_RIGHT,
    ),
    (re.compile(rf"{_LATERAL}.*\bleft\b", re.IGNORECASE), Directive.STEER_LEFT),
    (re.compile(r"speed\s+up|\baccelerat|\bfaster\b", re.IGNORECASE), Directive.SPEED_UP),
    (re.compile(r"\b(?:maintain|hold|keep)\b", re.IGNORECASE), Directive.HOLD_SPEED),
)


def receive_instruction(text: str) -> Directive:
    """Директива по тексту инструкции; нераспознанный текст даёт NoOp."""
    for pattern, directive in KEYWORD_TABLE:
        if pattern.search(text or ""):
            return directive
    return Directive.NO_OP


def perceive_tick(t: Tag, script: DriverScript, active_override: Optional[Directive]) -> DriverCommand:
    command = script.segment_at(t.time_ns)
    if active_override is None or active_override == Directive.NO_OP:
        return command
    return script.override_for(active_override).apply(command)
