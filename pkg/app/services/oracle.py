"""
Детерминированный оракул: отвечает как идеальный коуч по правилам коридора скорости
"""
from __future__ import annotations

from collections import deque
from typing import Optional, Sequence

from app.coach.models import ControlSignal, PromptDoc
from app.config import ms_to_ns, settings
from app.plant.models import Observation
from app.scenarios.envelope import Classification, Reason, classify
from app.scenarios.models import OracleMessages, ScenarioSpec

from .base import AgentBackend, Completion


def _sentence(messages: OracleMessages, result: Classification, observation: Observation) -> str:
    if result.reason == Reason.UNSAFE_MERGE:
        return messages.unsafe_merge
    if result.reason == Reason.MERGE_DUE:
        return messages.merge_steer if observation.head_checked else messages.merge_check
    if result.reason == Reason.MISSED_MERGE:
        return messages.missed_merge

    too_fast = observation.state.velocity > observation.desirable
    if result.signal == ControlSignal.ACTUATE:
        return messages.too_fast_actuate if too_fast else messages.too_slow_actuate
    return messages.too_fast_warning if too_fast else messages.too_slow_warning


def oracle_response(
    spec: ScenarioSpec,
    observation: Observation,
    force_signal: Optional[ControlSignal] = None,
) -> str:
    """Ответ ``SIGNAL|sentence`` для наблюдения; тот же классификатор, что и в тестах."""
    state = observation.state
    result = classify(
        spec,
        state.displacement,
        state.velocity,
        state.head,
        state.steer,
        head_checked=observation.head_checked,
        lane=observation.lane,
    )
    if force_signal is not None and force_signal != result.signal:
        result = Classification(force_signal, Reason.ON_TRACK)
    if result.signal == ControlSignal.NONE:
        return "NONE|"
    return f"{result.signal}|{_sentence(spec.oracle, result, observation)}"


class OracleBackend(AgentBackend):
    """Оракул с фиксированной или заданной списком латентностью.

    Заданные латентности расходуются по одной на вызов, затем действует
    постоянная.
    """

    name = "oracle"

    def __init__(
        self,
        spec: ScenarioSpec,
        *,
        latency_ms: Optional[float] = None,
        latencies_ms: Sequence[float] = (),
        force_signal: Optional[ControlSignal] = None,
    ) -> None:
        self.spec = spec
        self.latency_ns = ms_to_ns(settings.oracle_latency_ms if latency_ms is None else latency_ms)
        self.scripted = deque(ms_to_ns(value) for value in latencies_ms)
        self.force_signal = force_signal
        self.calls = 0

    def complete(self, prompt: PromptDoc) -> Completion:
        self.calls += 1
        latency_ns = self.scripted.popleft() if self.scripted else self.latency_ns
        if prompt.context is None:
            return Completion(latency_ns=latency_ns, error="oracle needs observation context")
        return Completion(
            raw=oracle_response(self.spec, prompt.context, self.force_signal),
            latency_ns=latency_ns,
        )
