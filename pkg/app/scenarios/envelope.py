"""
Коридор безопасной скорости и классификатор отклонений
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from app._compat import StrEnum
from typing import Optional

from app.coach.models import ControlSignal
from app.plant.models import Direction, Lane

from .models import ScenarioKind, ScenarioSpec


def desirable_velocity(spec: ScenarioSpec, s: float) -> float:
    """Желаемая скорость в точке s.

    StopSign: равнозамедленное торможение до нуля в конце участка;
    SpeedChange: линейный переход v0 -> target на участке, дальше target;
    LaneChange: постоянная target.
    """
    length = spec.course_length_m
    if spec.kind == ScenarioKind.STOP_SIGN:
        return spec.v0_mps * math.sqrt(max(0.0, 1.0 - s / length))
    if spec.kind == ScenarioKind.SPEED_CHANGE:
        if s >= length:
            return spec.target_velocity_mps
        fraction = max(0.0, s) / length
        return spec.v0_mps + (spec.target_velocity_mps - spec.v0_mps) * fraction
    return spec.target_velocity_mps


@dataclass(frozen=True)
class SafetyEnvelope:
    spec: ScenarioSpec

    def desirable(self, s: float) -> float:
        return desirable_velocity(self.spec, s)

    def bounds(self, s: float) -> tuple[float, float, float]:
        v_d = self.desirable(s)
        band = self.spec.band_halfwidth_mps
        return max(0.0, v_d - band), v_d, max(0.0, v_d + band)


class Reason(StrEnum):
    ON_TRACK = "ON_TRACK"
    TOO_FAST = "TOO_FAST"
    TOO_SLOW = "TOO_SLOW"
    UNSAFE_MERGE = "UNSAFE_MERGE"
    MERGE_DUE = "MERGE_DUE"
    MISSED_MERGE = "MISSED_MERGE"


_SEVERITY = {ControlSignal.NONE: 0, ControlSignal.WARNING: 1, ControlSignal.ACTUATE: 2}


@dataclass(frozen=True, slots=True)
class Classification:
    signal: ControlSignal
    reason: Reason = Reason.ON_TRACK


def classify_velocity(spec: ScenarioSpec, s: float, v: float) -> Classification:
    v_d = desirable_velocity(spec, s)
    deviation = abs(v - v_d)
    reason = Reason.TOO_FAST if v > v_d else Reason.TOO_SLOW
    if deviation <= spec.band_halfwidth_mps:
        return Classification(ControlSignal.NONE)
    if deviation <= spec.band_halfwidth_mps + spec.warning_margin_mps:
        return Classification(ControlSignal.WARNING, reason)
    return Classification(ControlSignal.ACTUATE, reason)


def classify(
    spec: ScenarioSpec,
    s: float,
    v: float,
    head: Direction,
    steer: Direction,
    *,
    head_checked: Optional[bool] = None,
    lane: Lane = Lane.LEFT,
) -> Classification:
    """Ожидаемая зона управляющего сигнала для состояния.

    head_checked=None означает «смотрим только на текущее положение головы».
    """
    result = classify_velocity(spec, s, v)
    if spec.kind != ScenarioKind.LANE_CHANGE or lane != Lane.LEFT:
        return result

    checked = head == Direction.RIGHT if head_checked is None else head_checked
    merging = steer == Direction.RIGHT
    lane_rule: Optional[Classification] = None
    if s >= spec.course_length_m:
        lane_rule = Classification(ControlSignal.ACTUATE, Reason.MISSED_MERGE)
    elif merging and not checked:
        lane_rule = Classification(ControlSignal.WARNING, Reason.UNSAFE_MERGE)
    elif s >= spec.merge_prompt_at_m and not merging:
        lane_rule = Classification(ControlSignal.WARNING, Reason.MERGE_DUE)

    # при равной тяжести побеждает правило полосы
    if lane_rule is not None and _SEVERITY[lane_rule.signal] >= _SEVERITY[result.signal]:
        return lane_rule
    return result
