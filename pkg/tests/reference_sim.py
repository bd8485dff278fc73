"""
Эталонный пошаговый прогон без ядра рантайма.

Повторяет семантику замкнутого контура такт за тактом для оракула с
латентностью меньше периода восприятия: тогда каждый инференс
завершается до следующего такта и пропусков нет.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from app.coach import ControlSignal, parse_response
from app.config import ms_to_ns, settings
from app.driver import Directive, perceive_tick, receive_instruction
from app.plant import (
    IDLE_COMMAND,
    Brake,
    CarState,
    Direction,
    DriverCommand,
    Lane,
    Observation,
    plant_react,
)
from app.runtime import Tag
from app.scenarios import SafetyEnvelope, ScenarioSpec
from app.services import oracle_response


@dataclass
class ReferenceTick:
    time_ns: int
    state: CarState
    lane: Lane
    head_checked: bool
    lower: float
    upper: float


@dataclass
class ReferenceRun:
    ticks: list[ReferenceTick] = field(default_factory=list)
    instructions: list[tuple[int, str]] = field(default_factory=list)
    actuations: list[int] = field(default_factory=list)


def reference_run(spec: ScenarioSpec, latency_ms: float = settings.oracle_latency_ms) -> ReferenceRun:
    period = settings.perception_period_ns
    latency = ms_to_ns(latency_ms)
    if not 0 < latency < period or latency > spec.deadline_ns:
        raise ValueError("reference loop needs 0 < latency < period and no deadline misses")

    driver_delay = ms_to_ns(settings.driver_delay_ms)
    actuation_delay = ms_to_ns(settings.actuation_delay_ms)
    actuation_hold = ms_to_ns(settings.actuation_hold_ms)
    throttle_interval = ms_to_ns(settings.throttle_interval_ms)
    lane_hold = ms_to_ns(settings.lane_change_hold_ms)
    head_window = ms_to_ns(settings.head_check_window_ms)

    script = spec.script()
    envelope = SafetyEnvelope(spec)
    run = ReferenceRun()

    state = spec.initial_state()
    held: DriverCommand = IDLE_COMMAND
    emitted: dict[int, DriverCommand] = {}
    arrivals: list[int] = []
    brake_until = -1

    active: Optional[Directive] = None
    active_until = 0
    pending: Optional[tuple[Directive, int]] = None
    last_emit: Optional[int] = None

    lane = spec.initial_lane
    steer, steer_since = Direction.CENTER, 0
    head_right_at: Optional[int] = None

    for k in range(spec.horizon_ns // period + 1):
        now = k * period

        # автомобиль
        if now - driver_delay in emitted:
            held = emitted.pop(now - driver_delay)
        for arrival in [a for a in arrivals if a <= now]:
            brake_until = max(brake_until, arrival + actuation_hold)
            arrivals.remove(arrival)
        if k > 0:
            actuation = Brake.EMERGENCY if brake_until > now else None
            state = plant_react(held, actuation, state, period)

        # водитель: инструкции приходят между тактами
        if pending is not None and pending[1] < now:
            active, active_until = pending[0], now + spec.instruction_hold_ns
            pending = None
        if active is not None and now >= active_until:
            active = None
        emitted[now] = perceive_tick(Tag(now), script, active)

        # окружение
        if state.steer != steer:
            steer, steer_since = state.steer, now
        if now - steer_since >= lane_hold:
            if state.steer == Direction.RIGHT:
                lane = Lane.RIGHT
            elif state.steer == Direction.LEFT:
                lane = Lane.LEFT
        if state.head == Direction.RIGHT:
            head_right_at = now
        head_checked = head_right_at is not None and now - head_right_at < head_window
        lower, desirable, upper = envelope.bounds(state.displacement)
        run.ticks.append(ReferenceTick(now, state, lane, head_checked, lower, upper))

        # коуч: ответ приходит через latency, до следующего такта
        observation = Observation(
            tag=Tag(now, 1),
            state=state,
            lane=lane,
            lower=lower,
            desirable=desirable,
            upper=upper,
            head_checked=head_checked,
            course_length=spec.course_length_m,
        )
        output = parse_response(oracle_response(spec, observation))
        ready = now + latency
        if ready > spec.horizon_ns or output.signal == ControlSignal.NONE:
            continue

        if last_emit is None or ready - last_emit >= throttle_interval:
            last_emit = ready
            run.instructions.append((ready, output.instruction))
            directive = receive_instruction(output.instruction)
            if directive != Directive.NO_OP:
                pending = (directive, ready)
        if output.signal == ControlSignal.ACTUATE:
            run.actuations.append(ready)
            arrivals.append(ready + actuation_delay)

    return run
