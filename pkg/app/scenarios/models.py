"""
Схема файла сценария (YAML, валидация pydantic)
"""
from __future__ import annotations

from app._compat import StrEnum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator

from app.config import ms_to_ns, s_to_ns, settings
from app.driver.models import DEFAULT_COMPLIANCE, Directive, DriverScript, ScriptSegment
from app.plant.models import (
    Accelerator,
    Brake,
    CarState,
    CommandOverride,
    Direction,
    DriverCommand,
    Lane,
)


class ScenarioKind(StrEnum):
    STOP_SIGN = "StopSign"
    SPEED_CHANGE = "SpeedChange"
    LANE_CHANGE = "LaneChange"


class SegmentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    from_ms: int = Field(ge=0)
    accelerator: Accelerator = Accelerator.NONE
    brake: Brake = Brake.NONE
    head: Direction = Direction.CENTER
    steer: Direction = Direction.CENTER

    def to_segment(self) -> ScriptSegment:
        return ScriptSegment(
            from_ns=ms_to_ns(self.from_ms),
            command=DriverCommand(
                accelerator=self.accelerator, brake=self.brake, head=self.head, steer=self.steer
            ),
        )


class DriverScriptSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    segments: list[SegmentSpec] = Field(min_length=1)
    compliance: dict[Directive, CommandOverride] = Field(default_factory=dict)

    @field_validator("segments")
    @classmethod
    def ordered_segments(cls, segments: list[SegmentSpec]) -> list[SegmentSpec]:
        if segments[0].from_ms != 0:
            raise ValueError("segment 0 must start at from_ms=0")
        for index in range(1, len(segments)):
            if segments[index].from_ms <= segments[index - 1].from_ms:
                raise ValueError(
                    f"segment {index} (from_ms={segments[index].from_ms}) overlaps "
                    f"segment {index - 1} (from_ms={segments[index - 1].from_ms})"
                )
        return segments

    def build(self) -> DriverScript:
        compliance = {**DEFAULT_COMPLIANCE, **self.compliance}
        return DriverScript(
            segments=tuple(seg.to_segment() for seg in self.segments),
            compliance=compliance,
        )


class OracleMessages(BaseModel):
    """Фразы оракула по причине отклонения"""

    model_config = ConfigDict(extra="forbid")

    too_fast_warning: str = "Apply gentle braking to slow down."
    too_slow_warning: str = "Speed up gently to match the target speed."
    too_fast_actuate: str = "Emergency braking engaged, keep your foot on the brake."
    too_slow_actuate: str = "Unsafe speed, the coach is stopping the car."
    unsafe_merge: str = "Check your right mirror before merging."
    merge_check: str = "Check your right mirror before changing lanes."
    merge_steer: str = "Steer right into the right lane now."
    missed_merge: str = "You missed the lane change, braking to pull over."


class ScenarioSpec(BaseModel):
    """Полное описание сценария после загрузки"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    id: str
    kind: ScenarioKind
    title: str = ""
    course_length_m: float = Field(100.0, gt=0)
    v0_mps: float = Field(ge=0)
    target_velocity_mps: float = Field(0.0, ge=0)
    band_halfwidth_mps: float = Field(default_factory=lambda: settings.band_halfwidth_mps, gt=0)
    warning_margin_mps: float = Field(default_factory=lambda: settings.warning_margin_mps, gt=0)
    deadline_ms: int = Field(default_factory=lambda: settings.deadline_ms, ge=0)
    horizon_s: float = Field(default_factory=lambda: settings.horizon_s, gt=0)
    instruction_hold_ms: int = Field(default_factory=lambda: settings.instruction_hold_ms, gt=0)
    initial_lane: Lane = Lane.LEFT
    merge_prompt_at_m: float = Field(40.0, ge=0)
    prompt_template: str
    driver_script: DriverScriptSpec
    oracle: OracleMessages = Field(default_factory=OracleMessages)

    _source: Optional[Path] = PrivateAttr(default=None)

    @property
    def source(self) -> Optional[Path]:
        return self._source

    @property
    def deadline_ns(self) -> int:
        return ms_to_ns(self.deadline_ms)

    @property
    def horizon_ns(self) -> int:
        return s_to_ns(self.horizon_s)

    @property
    def instruction_hold_ns(self) -> int:
        return ms_to_ns(self.instruction_hold_ms)

    def initial_state(self) -> CarState:
        return CarState(velocity=self.v0_mps, displacement=0.0)

    def script(self) -> DriverScript:
        return self.driver_script.build()

    def template_path(self) -> Path:
        path = Path(self.prompt_template)
        if not path.is_absolute() and self._source is not None:
            path = self._source.parent / path
        return path
