"""
Разбор ответа модели формата ``Signal|Message``
"""
from __future__ import annotations

from pydantic import ValidationError

from app.errors import ParseError

from .models import CoachOutput, ControlSignal


def parse_response(raw: str) -> CoachOutput:
    """Ответ модели в CoachOutput.

    Берётся первая непустая строка; любая непустая строка после неё
    делает ответ некорректным.
    """
    lines = [line.strip() for line in (raw or "").strip().splitlines()]
    content = [line for line in lines if line]
    if not content:
        raise ParseError("empty response")
    if len(content) > 1:
        raise ParseError(f"expected one line, got {len(content)}")

    head, sep, instruction = content[0].partition("|")
    if not sep:
        raise ParseError(f"no '|' separator in {content[0]!r}")
    try:
        signal = ControlSignal(head.strip().upper())
    except ValueError as e:
        raise ParseError(f"unknown control signal {head.strip()!r}") from e

    try:
        return CoachOutput(signal=signal, instruction=instruction.strip())
    except ValidationError as e:
        raise ParseError(f"{signal} without instruction") from e


def serialize(output: CoachOutput) -> str:
    return output.serialize()
