"""
Команда run: один прогон сценария с записью артефактов
"""
from __future__ import annotations

import argparse
from pathlib import Path

from loguru import logger

from app.config import settings
from app.simulation import run_simulation
from app.utils import write_csv

from .common import (
    EXIT_OK,
    add_backend_args,
    add_scenario_args,
    backend_factory,
    format_summary,
    guarded,
    resolve_backend,
    resolve_scenario,
)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("run", help="run one scenario")
    add_scenario_args(parser)
    add_backend_args(parser)
    parser.add_argument("--record", type=Path, default=None, help="write the inference trace here")
    parser.add_argument("--trace-out", type=Path, default=None, help="write the simulation trace here")
    parser.add_argument("--csv-out", type=Path, default=None, help="write the plot CSV here")
    parser.set_defaults(handler=handle)


@guarded
def handle(args: argparse.Namespace) -> int:
    spec = resolve_scenario(args)
    config = resolve_backend(args)
    backend = backend_factory(args, config, spec, record_path=args.record)()

    result = run_simulation(spec, backend)

    if args.trace_out:
        result.trace.write(args.trace_out)
        logger.info(f"💾 Trace written to {args.trace_out}")
    if args.csv_out:
        rows = write_csv(args.csv_out, result.observations, result.trace, settings.perception_period_ns)
        logger.info(f"💾 CSV with {rows} rows written to {args.csv_out}")

    print(format_summary(result))
    return EXIT_OK
