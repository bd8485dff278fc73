"""
Критерии успеха сценариев по потоку наблюдений
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from app.plant.models import Lane, Observation

from .models import ScenarioKind, ScenarioSpec

STOP_VELOCITY_MPS = 0.5
STOP_WINDOW_M = (95.0, 105.0)
SPEED_TOLERANCE_MPS = 1.0
LANE_SPEED_TOLERANCE_MPS = 2.0


@dataclass(frozen=True, slots=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str


def _stop_sign(spec: ScenarioSpec, observations: Sequence[Observation]) -> list[CriterionResult]:
    low, high = STOP_WINDOW_M
    stopped = [
        o for o in observations
        if low <= o.state.displacement <= high and o.state.velocity <= STOP_VELOCITY_MPS
    ]
    if stopped:
        first = stopped[0]
        detail = f"v={first.state.velocity:.2f} m/s at s={first.state.displacement:.2f} m"
    else:
        detail = f"never below {STOP_VELOCITY_MPS} m/s within s∈[{low:g},{high:g}]"
    return [CriterionResult("stop_at_sign", bool(stopped), detail)]


def _first_at_course_end(spec: ScenarioSpec, observations: Sequence[Observation]):
    return next((o for o in observations if o.state.displacement >= spec.course_length_m), None)


def _speed_change(spec: ScenarioSpec, observations: Sequence[Observation]) -> list[CriterionResult]:
    at_end = _first_at_course_end(spec, observations)
    if at_end is None:
        return [CriterionResult("target_speed_at_end", False, "course end never reached")]
    error = abs(at_end.state.velocity - spec.target_velocity_mps)
    return [
        CriterionResult(
            "target_speed_at_end",
            error <= SPEED_TOLERANCE_MPS,
            f"v={at_end.state.velocity:.2f} m/s at s={at_end.state.displacement:.2f} m",
        )
    ]


def _lane_change(spec: ScenarioSpec, observations: Sequence[Observation]) -> list[CriterionResult]:
    merged = next((o for o in observations if o.lane == Lane.RIGHT), None)
    lane_ok = merged is not None and merged.state.displacement <= spec.course_length_m
    lane_detail = (
        f"right lane at s={merged.state.displacement:.2f} m" if merged else "never changed lanes"
    )

    on_course = [o for o in observations if o.state.displacement <= spec.course_length_m]
    worst = max(
        (abs(o.state.velocity - spec.target_velocity_mps) for o in on_course), default=0.0
    )
    return [
        CriterionResult("right_lane_in_time", lane_ok, lane_detail),
        CriterionResult(
            "speed_held",
            worst <= LANE_SPEED_TOLERANCE_MPS,
            f"max deviation {worst:.2f} m/s",
        ),
    ]


_EVALUATORS = {
    ScenarioKind.STOP_SIGN: _stop_sign,
    ScenarioKind.SPEED_CHANGE: _speed_change,
    ScenarioKind.LANE_CHANGE: _lane_change,
}


def evaluate(spec: ScenarioSpec, observations: Sequence[Observation]) -> list[CriterionResult]:
    return _EVALUATORS[spec.kind](spec, observations)
