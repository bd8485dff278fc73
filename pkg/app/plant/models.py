"""
Модели объекта управления: команды водителя, состояние автомобиля, наблюдения
"""
from __future__ import annotations

from app._compat import StrEnum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.runtime import Tag


class Accelerator(StrEnum):
    COASTING = "Coasting"
    CRUISE = "Cruise"
    NORMAL_ACCEL = "NormalAccel"
    STRONG_ACCEL = "StrongAccel"
    NONE = "None"


class Brake(StrEnum):
    GENTLE = "Gentle"
    EMERGENCY = "Emergency"
    NONE = "None"


class Direction(StrEnum):
    """Положение руля или головы водителя"""

    LEFT = "Left"
    RIGHT = "Right"
    CENTER = "Center"


class Lane(StrEnum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"


class DriverCommand(BaseModel):
    """Дискретное поведение водителя за один такт восприятия"""

    model_config = ConfigDict(frozen=True)

    accelerator: Accelerator = Accelerator.NONE
    brake: Brake = Brake.NONE
    head: Direction = Direction.CENTER
    steer: Direction = Direction.CENTER

    def canonical(self) -> str:
        return (
            f"accelerator={self.accelerator} brake={self.brake} "
            f"head={self.head} steer={self.steer}"
        )


IDLE_COMMAND = DriverCommand()


class CommandOverride(BaseModel):
    """Частичная замена полей команды (None означает «оставить как есть»)"""

    model_config = ConfigDict(frozen=True)

    accelerator: Optional[Accelerator] = None
    brake: Optional[Brake] = None
    head: Optional[Direction] = None
    steer: Optional[Direction] = None

    def apply(self, command: DriverCommand) -> DriverCommand:
        changes = self.model_dump(exclude_none=True)
        return command.model_copy(update=changes) if changes else command


class CarState(BaseModel):
    model_config = ConfigDict(frozen=True)

    velocity: float = Field(0.0, ge=0.0)
    displacement: float = 0.0
    steer: Direction = Direction.CENTER
    head: Direction = Direction.CENTER

    def canonical(self) -> str:
        return (
            f"v={self.velocity:.6f} s={self.displacement:.6f} "
            f"steer={self.steer} head={self.head}"
        )


class StepParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    accel: float
    dt_ns: int

    @field_validator("dt_ns")
    @classmethod
    def positive_dt(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("dt_ns must be positive")
        return v

    @property
    def dt(self) -> float:
        return self.dt_ns / 1e9


class Observation(BaseModel):
    """Что видит коуч на такте: состояние, полоса и коридор скорости"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tag: Tag
    state: CarState
    lane: Lane = Lane.LEFT
    lower: float
    desirable: float
    upper: float
    head_checked: bool = False
    course_length: float = 100.0

    def canonical(self) -> str:
        return (
            f"{self.state.canonical()} lane={self.lane} "
            f"band=[{self.lower:.6f},{self.upper:.6f}] head_checked={str(self.head_checked).lower()}"
        )
