"""
Модели водителя: сценарий поведения и директивы коуча
"""
from __future__ import annotations

from app._compat import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.plant.models import Accelerator, Brake, CommandOverride, Direction, DriverCommand


class Directive(StrEnum):
    SLOW_DOWN = "SlowDown"
    SPEED_UP = "SpeedUp"
    BRAKE_NOW = "BrakeNow"
    CHECK_RIGHT = "CheckRight"
    STEER_RIGHT = "SteerRight"
    STEER_LEFT = "SteerLeft"
    HOLD_SPEED = "HoldSpeed"
    NO_OP = "NoOp"


DEFAULT_COMPLIANCE: dict[Directive, CommandOverride] = {
    Directive.SLOW_DOWN: CommandOverride(accelerator=Accelerator.COASTING),
    Directive.SPEED_UP: CommandOverride(accelerator=Accelerator.NORMAL_ACCEL, brake=Brake.NONE),
    Directive.BRAKE_NOW: CommandOverride(accelerator=Accelerator.NONE, brake=Brake.GENTLE),
    Directive.CHECK_RIGHT: CommandOverride(head=Direction.RIGHT),
    Directive.STEER_RIGHT: CommandOverride(steer=Direction.RIGHT, head=Direction.RIGHT),
    Directive.STEER_LEFT: CommandOverride(steer=Direction.LEFT, head=Direction.LEFT),
    Directive.HOLD_SPEED: CommandOverride(accelerator=Accelerator.CRUISE, brake=Brake.NONE),
    Directive.NO_OP: CommandOverride(),
}


class ScriptSegment(BaseModel):
    model_config = ConfigDict(frozen=True)

    from_ns: int = Field(ge=0)
    command: DriverCommand


class DriverScript(BaseModel):
    """Кусочно-постоянное поведение водителя плюс карта реакции на директивы"""

    model_config = ConfigDict(frozen=True)

    segments: tuple[ScriptSegment, ...]
    compliance: dict[Directive, CommandOverride] = Field(
        default_factory=lambda: dict(DEFAULT_COMPLIANCE)
    )

    @model_validator(mode="after")
    def check_segments(self) -> DriverScript:
        if not self.segments:
            raise ValueError("driver script needs at least one segment")
        if self.segments[0].from_ns != 0:
            raise ValueError("first segment must start at 0")
        for prev, seg in zip(self.segments, self.segments[1:]):
            if seg.from_ns <= prev.from_ns:
                raise ValueError(
                    f"segments overlap or are out of order at from_ns={seg.from_ns}"
                )
        return self

    def segment_at(self, time_ns: int) -> DriverCommand:
        """Команда активного сегмента; после конца сценария держится последний."""
        current = self.segments[0].command
        for seg in self.segments:
            if seg.from_ns > time_ns:
                break
            current = seg.command
        return current

    def override_for(self, directive: Directive) -> CommandOverride:
        return self.compliance.get(directive, DEFAULT_COMPLIANCE[directive])
