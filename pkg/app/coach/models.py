"""
Модели коуча: управляющие сигналы, ответ модели, режимы планировщика, промпт
"""
from __future__ import annotations

import hashlib
from app._compat import StrEnum
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.plant.models import Observation


class ControlSignal(StrEnum):
    NONE = "NONE"
    WARNING = "WARNING"
    ACTUATE = "ACTUATE"


class PlannerMode(StrEnum):
    MONITORING = "Monitoring"
    WARNING = "Warning"
    ACTUATION = "Actuation"


class CoachOutput(BaseModel):
    """Сигнал и одно предложение для водителя, в проводе ``SIGNAL|instruction``"""

    model_config = ConfigDict(frozen=True)

    signal: ControlSignal
    instruction: str = ""

    @field_validator("instruction")
    @classmethod
    def single_line(cls, v: str) -> str:
        if v and v.splitlines() != [v]:
            raise ValueError("instruction must be a single line")
        if v != v.strip():
            raise ValueError("instruction must not have surrounding whitespace")
        return v

    @model_validator(mode="after")
    def instruction_required(self) -> CoachOutput:
        if self.signal != ControlSignal.NONE and not self.instruction:
            raise ValueError(f"{self.signal} requires an instruction")
        return self

    def serialize(self) -> str:
        return f"{self.signal}|{self.instruction}"

    def canonical(self) -> str:
        return self.serialize()


class PromptDoc(BaseModel):
    """Готовый промпт. ``context`` не входит в дайджест и нужен только оракулу."""

    model_config = ConfigDict(frozen=True)

    system_text: str
    user_text: str
    max_tokens: int = 30
    temperature: float = 0.0
    context: Optional[Observation] = None

    def to_bytes(self) -> bytes:
        return b"\0".join(
            [
                self.system_text.encode("utf-8"),
                self.user_text.encode("utf-8"),
                str(self.max_tokens).encode("ascii"),
                repr(float(self.temperature)).encode("ascii"),
            ]
        )

    def digest(self) -> str:
        """Стабильный 64-битный дайджест, 16 hex-символов."""
        return hashlib.blake2b(self.to_bytes(), digest_size=8).hexdigest()
