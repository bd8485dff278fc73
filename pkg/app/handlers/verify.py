"""
Команда verify: N прогонов с одинаковым входом дают одинаковую трассу
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from typing import Callable, Optional

from loguru import logger

from app.config import settings
from app.errors import ConfigurationError
from app.runtime import Divergence, first_divergence
from app.scenarios import ScenarioSpec
from app.services import AgentBackend
from app.simulation import run_simulation

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


@dataclass
class VerifyReport:
    runs: int
    divergence: Optional[Divergence] = None
    diverging_run: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.divergence is None


def verify_determinism(
    spec: ScenarioSpec, make_backend: Callable[[], AgentBackend], runs: int
) -> VerifyReport:
    """Сравнивает каноническую трассу каждого прогона с первым."""
    if runs < 1:
        raise ConfigurationError("--runs must be at least 1")
    reference: Optional[bytes] = None
    for run in range(1, runs + 1):
        trace = run_simulation(spec, make_backend()).trace
        data = trace.to_bytes()
        if reference is None:
            reference = data
            continue
        if data != reference:
            divergence = first_divergence(
                reference.decode("utf-8").splitlines(), data.decode("utf-8").splitlines()
            )
            return VerifyReport(runs=run, divergence=divergence, diverging_run=run)
        logger.debug(f"🔁 Run {run}/{runs} identical")
    return VerifyReport(runs=runs)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="check that repeated runs are byte-identical")
    add_scenario_args(parser)
    add_backend_args(parser)
    parser.add_argument("--runs", type=int, default=settings.verify_runs)
    parser.set_defaults(handler=handle)


@guarded
def handle(args: argparse.Namespace) -> int:
    spec = resolve_scenario(args)
    config = resolve_backend(args)
    if not config.deterministic:
        raise ConfigurationError(
            "verify needs deterministic inputs: record a live run and verify with replay:<file>"
        )

    report = verify_determinism(spec, backend_factory(args, config, spec), args.runs)
    if report.passed:
        logger.info(f"✅ {report.runs} runs produced identical traces")
        print(f"PASS: {report.runs} runs of '{spec.id}' with {config.describe()} are identical")
        return EXIT_OK

    d = report.divergence
    logger.warning(f"⚠️ Run {report.diverging_run} diverged at line {d.line}")
    print(f"FAIL: run {report.diverging_run} diverges at line {d.line}")
    print(f"  run 1: {d.left}")
    print(f"  run {report.diverging_run}: {d.right}")
    return EXIT_FAILURE
