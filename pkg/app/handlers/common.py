"""
Общие аргументы и обработка ошибок для команд
"""
from __future__ import annotations

import argparse
from functools import wraps
from pathlib import Path
from typing import Callable, Optional

from loguru import logger

from app.config import settings
from app.errors import ConfigurationError, SimulationFault
from app.scenarios import ScenarioSpec, load_scenario
from app.services import AgentBackend, BackendConfig, create_backend, parse_backend
from app.simulation import SimulationResult

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_FAULT = 3

Handler = Callable[[argparse.Namespace], int]


def guarded(handler: Handler) -> Handler:
    """Переводит ошибки конфигурации и сбои прогона в коды выхода."""

    @wraps(handler)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return handler(args)
        except ConfigurationError as e:
            logger.error(f"❌ Configuration error: {e}")
            print(f"error: {e}")
            return EXIT_CONFIG_ERROR
        except SimulationFault as e:
            logger.error(f"💥 Simulation fault: {e}")
            print(f"fault: {e}")
            return EXIT_FAULT

    return wrapper


def add_scenario_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scenario",
        default="stop-sign",
        help="builtin id (stop-sign, speed-change, lane-change) or path to a YAML file",
    )
    parser.add_argument("--deadline-ms", type=int, default=None, help="override the scenario deadline")
    parser.add_argument("--horizon-s", type=float, default=None, help="override the scenario horizon")


def add_backend_args(parser: argparse.ArgumentParser, default: str = "oracle") -> None:
    parser.add_argument(
        "--backend",
        default=default,
        help="oracle | replay:<trace file> | live:<endpoint>,<model> | live",
    )
    parser.add_argument("--endpoint", default=None, help="Ollama endpoint for the live backend")
    parser.add_argument("--model", default=None, help="model name for the live backend")
    parser.add_argument("--strict-replay", action="store_true", help="abort on prompt digest mismatch")
    parser.add_argument(
        "--oracle-latency-ms",
        type=float,
        default=None,
        help=f"constant oracle latency (default {settings.oracle_latency_ms} ms)",
    )


def resolve_scenario(args: argparse.Namespace) -> ScenarioSpec:
    spec = load_scenario(args.scenario)
    overrides = {}
    if args.deadline_ms is not None:
        if args.deadline_ms < 0:
            raise ConfigurationError("--deadline-ms must be non-negative")
        overrides["deadline_ms"] = args.deadline_ms
    if args.horizon_s is not None:
        if args.horizon_s <= 0:
            raise ConfigurationError("--horizon-s must be positive")
        overrides["horizon_s"] = args.horizon_s
    return spec.model_copy(update=overrides) if overrides else spec


def resolve_backend(args: argparse.Namespace) -> BackendConfig:
    return parse_backend(args.backend, endpoint=args.endpoint, model=args.model)


def backend_factory(
    args: argparse.Namespace,
    config: BackendConfig,
    spec: ScenarioSpec,
    record_path: Optional[Path] = None,
) -> Callable[[], AgentBackend]:
    def make() -> AgentBackend:
        return create_backend(
            config,
            spec,
            strict_replay=args.strict_replay,
            record_path=record_path,
            oracle_latency_ms=args.oracle_latency_ms,
        )

    return make


def format_summary(result: SimulationResult) -> str:
    lines = [f"scenario: {result.spec.id} ({result.spec.kind})"]
    lines += [f"  {name}: {count}" for name, count in result.summary.counts.items()]
    for criterion in result.summary.criteria:
        status = "PASS" if criterion.passed else "FAIL"
        lines.append(f"  [{status}] {criterion.name}: {criterion.detail}")
    return "\n".join(lines)
