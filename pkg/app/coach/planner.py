"""
Планировщик коуча: модальная модель Monitoring / Warning / Actuation
"""
from __future__ import annotations

from dataclasses import dataclass
from app._compat import StrEnum
from typing import Optional

from app.plant.models import Brake
from app.runtime import Reactor, Runtime, Tag, TraceKind

from .models import CoachOutput, ControlSignal, PlannerMode

_MODE_FOR_SIGNAL = {
    ControlSignal.NONE: PlannerMode.MONITORING,
    ControlSignal.WARNING: PlannerMode.WARNING,
    ControlSignal.ACTUATE: PlannerMode.ACTUATION,
}


@dataclass(frozen=True, slots=True)
class PlannerStep:
    mode: PlannerMode
    planned_instr: Optional[str] = None
    actuation: Optional[Brake] = None


def planner_step(
    signal: ControlSignal, instruction: str, mode: PlannerMode, tag: Tag
) -> PlannerStep:
    """Переход по сигналу. Режим сохраняется, пока не придёт другой сигнал."""
    new_mode = _MODE_FOR_SIGNAL[signal]
    if signal == ControlSignal.NONE:
        return PlannerStep(new_mode)
    planned = instruction or None
    actuation = Brake.EMERGENCY if signal == ControlSignal.ACTUATE else None
    return PlannerStep(new_mode, planned, actuation)


class ThrottleDecision(StrEnum):
    EMIT = "emit"
    SUPPRESS = "suppress"


def throttle(candidate: Tag, last_emit: Optional[Tag], interval_ns: int) -> ThrottleDecision:
    # граница включительна: ровно interval_ns уже можно
    if last_emit is None or candidate.time_ns - last_emit.time_ns >= interval_ns:
        return ThrottleDecision.EMIT
    return ThrottleDecision.SUPPRESS


class Planner(Reactor):
    def __init__(
        self, runtime: Runtime, parent: Reactor, *, throttle_interval_ns: int
    ) -> None:
        super().__init__("planner", runtime, parent)
        self.ctrl = self.input("ctrl", CoachOutput)
        self.instr = self.output("instr", str)
        self.act = self.output("act", Brake)

        self.mode = PlannerMode.MONITORING
        self.throttle_interval_ns = throttle_interval_ns
        self.last_emit: Optional[Tag] = None

        self.reaction(self.on_signal, triggers=[self.ctrl], effects=[self.instr, self.act])

    def on_signal(self) -> None:
        output: CoachOutput = self.ctrl.value
        step = planner_step(output.signal, output.instruction, self.mode, self.tag)

        if step.mode != self.mode:
            self.record(TraceKind.MODE_TRANSITION, f"{self.mode}->{step.mode}")
            self.mode = step.mode

        if step.planned_instr is not None:
            decision = throttle(self.tag, self.last_emit, self.throttle_interval_ns)
            if decision is ThrottleDecision.EMIT:
                self.last_emit = self.tag
                self.instr.set(step.planned_instr)
                self.record(TraceKind.INSTRUCTION, step.planned_instr)
            else:
                self.record(TraceKind.SUPPRESSED, step.planned_instr)

        if step.actuation is not None:
            self.act.set(step.actuation)
            self.record(TraceKind.ACTUATION, str(step.actuation))
