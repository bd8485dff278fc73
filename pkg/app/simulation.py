"""
Сборка модели (Driver, Car, Environment, Coach) и прогон до горизонта
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from loguru import logger

from app.coach import Coach, PromptTemplate
from app.config import ms_to_ns, settings
from app.driver import Driver
from app.middlewares import setup_middlewares
from app.plant import Car, Environment, Observation
from app.runtime import Runtime, Trace, TraceKind
from app.scenarios import CriterionResult, SafetyEnvelope, ScenarioSpec, evaluate, load_template
from app.services.base import AgentBackend

SUMMARY_KINDS: dict[str, TraceKind] = {
    "inferences": TraceKind.INFERENCE,
    "instructions": TraceKind.INSTRUCTION,
    "suppressed": TraceKind.SUPPRESSED,
    "actuations": TraceKind.ACTUATION,
    "deadline_misses": TraceKind.DEADLINE_MISS,
    "fallbacks": TraceKind.FALLBACK,
    "parse_errors": TraceKind.PARSE_ERROR,
    "skipped": TraceKind.SKIPPED,
    "digest_mismatches": TraceKind.DIGEST_MISMATCH,
}


@dataclass
class RunSummary:
    counts: dict[str, int]
    criteria: list[CriterionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    @classmethod
    def from_trace(cls, trace: Trace, criteria: list[CriterionResult]) -> RunSummary:
        counts = {name: len(trace.of_kind(kind)) for name, kind in SUMMARY_KINDS.items()}
        return cls(counts=counts, criteria=criteria)


@dataclass
class SimulationResult:
    spec: ScenarioSpec
    trace: Trace
    observations: list[Observation]
    summary: RunSummary


class Simulation:
    """Одна модель на один прогон: рантайм и реакторы не переиспользуются"""

    def __init__(
        self,
        spec: ScenarioSpec,
        backend: AgentBackend,
        *,
        template: Optional[PromptTemplate] = None,
        middlewares: Iterable = (),
    ) -> None:
        self.spec = spec
        self.backend = backend
        self.runtime = Runtime()
        setup_middlewares(self.runtime, extra=middlewares)

        period_ns = settings.perception_period_ns
        self.driver = Driver(
            self.runtime,
            script=spec.script(),
            period_ns=period_ns,
            hold_ns=spec.instruction_hold_ns,
        )
        # один таймер восприятия на водителя и автомобиль
        self.car = Car(
            self.runtime,
            initial=spec.initial_state(),
            clock=self.driver.perception,
            dt_ns=period_ns,
            actuation_hold_ns=ms_to_ns(settings.actuation_hold_ms),
        )
        self.environment = Environment(
            self.runtime,
            envelope=SafetyEnvelope(spec),
            course_length=spec.course_length_m,
            initial_lane=spec.initial_lane,
            lane_change_hold_ns=ms_to_ns(settings.lane_change_hold_ms),
            head_check_window_ns=ms_to_ns(settings.head_check_window_ms),
        )
        self.coach = Coach(
            self.runtime,
            backend=backend,
            template=template or load_template(spec),
            deadline_ns=spec.deadline_ns,
            throttle_interval_ns=ms_to_ns(settings.throttle_interval_ms),
        )

        actuation_delay_ns = ms_to_ns(settings.actuation_delay_ms)
        self.runtime.connect(self.driver.command, self.car.command, ms_to_ns(settings.driver_delay_ms))
        self.runtime.connect(self.car.state_out, self.environment.state_in)
        self.runtime.connect(self.environment.observation, self.coach.observation)
        self.runtime.connect(self.coach.instr, self.driver.instr)
        self.runtime.connect(self.coach.act, self.car.act, actuation_delay_ns)
        self.runtime.connect(self.coach.fallback, self.car.fallback, actuation_delay_ns)
        self.runtime.finalize()

    def run(self) -> SimulationResult:
        logger.info(
            f"🔄 Running '{self.spec.id}' with {self.backend.name} backend "
            f"(deadline {self.spec.deadline_ms} ms, horizon {self.spec.horizon_s:g} s)"
        )
        try:
            trace = self.runtime.run_until(self.spec.horizon_ns)
        finally:
            self.backend.close()

        observations = list(self.environment.history)
        summary = RunSummary.from_trace(trace, evaluate(self.spec, observations))
        logger.info(f"✅ Run finished: {len(trace)} trace events, {len(observations)} ticks")
        return SimulationResult(self.spec, trace, observations, summary)


def run_simulation(spec: ScenarioSpec, backend: AgentBackend, **kwargs) -> SimulationResult:
    return Simulation(spec, backend, **kwargs).run()
