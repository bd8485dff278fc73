"""
Команда bench: замер латентности инференса для выбора дедлайна
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from app.coach import PromptDoc, build_prompt
from app.config import settings
from app.errors import ConfigurationError
from app.plant.models import Observation
from app.runtime import ZERO
from app.scenarios import SafetyEnvelope, ScenarioSpec, load_template
from app.services import AgentBackend, OllamaService

from .common import (
    EXIT_FAILURE,
    EXIT_OK,
    add_backend_args,
    add_scenario_args,
    backend_factory,
    guarded,
    resolve_backend,
    resolve_scenario,
)

NS_PER_MS = 1e6


@dataclass
class BenchReport:
    samples_ms: list[float]
    failures: int

    @property
    def count(self) -> int:
        return len(self.samples_ms)

    def stats(self) -> dict[str, float]:
        samples = np.asarray(self.samples_ms, dtype=float)
        return {
            "min": float(samples.min()),
            "median": float(np.median(samples)),
            "p95": float(np.percentile(samples, 95)),
            "max": float(samples.max()),
        }

    @property
    def suggested_deadline_ms(self) -> int:
        # худший замер, вверх до целой миллисекунды
        return math.ceil(max(self.samples_ms))


def representative_prompt(spec: ScenarioSpec) -> PromptDoc:
    """Промпт для начального состояния сценария."""
    state = spec.initial_state()
    lower, desirable, upper = SafetyEnvelope(spec).bounds(state.displacement)
    observation = Observation(
        tag=ZERO,
        state=state,
        lane=spec.initial_lane,
        lower=lower,
        desirable=desirable,
        upper=upper,
        course_length=spec.course_length_m,
    )
    return build_prompt(load_template(spec), observation)


def bench_backend(backend: AgentBackend, prompt: PromptDoc, runs: int) -> BenchReport:
    samples: list[float] = []
    failures = 0
    for index in range(runs):
        completion = backend.complete(prompt)
        if completion.ok:
            samples.append(completion.latency_ns / NS_PER_MS)
        else:
            failures += 1
        if (index + 1) % 50 == 0:
            logger.info(f"🔄 {index + 1}/{runs} completions")
    return BenchReport(samples_ms=samples, failures=failures)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="measure inference latency and suggest a deadline")
    add_scenario_args(parser)
    add_backend_args(parser, default="live")
    parser.add_argument("--runs", type=int, default=settings.bench_runs)
    parser.set_defaults(handler=handle)


@guarded
def handle(args: argparse.Namespace) -> int:
    spec = resolve_scenario(args)
    config = resolve_backend(args)
    backend = backend_factory(args, config, spec)()
    try:
        if isinstance(backend, OllamaService) and not backend.check_connection():
            raise ConfigurationError(f"Ollama is not reachable at {backend.endpoint}")
        report = bench_backend(backend, representative_prompt(spec), args.runs)
    finally:
        backend.close()

    print(f"backend: {config.describe()}")
    print(f"samples: {report.count}  failures: {report.failures}")
    if not report.count:
        logger.error("❌ No successful completions")
        return EXIT_FAILURE

    for name, value in report.stats().items():
        print(f"  {name}: {value:.3f} ms")
    print(f"suggested deadline: {report.suggested_deadline_ms} ms")
    return EXIT_OK
