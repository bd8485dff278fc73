"""
Команда diff: первая расходящаяся строка двух трасс
"""
from __future__ import annotations

import argparse
from pathlib import Path

from app.errors import ConfigurationError
from app.runtime import first_divergence

from .common import EXIT_FAILURE, EXIT_OK, guarded


def _lines(path: Path) -> list[str]:
    try:
        return path.read_bytes().decode("utf-8").split("\n")
    except OSError as e:
        raise ConfigurationError(f"Cannot read trace {path}: {e}") from e


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("diff", help="compare two trace files")
    parser.add_argument("left", type=Path)
    parser.add_argument("right", type=Path)
    parser.set_defaults(handler=handle)


@guarded
def handle(args: argparse.Namespace) -> int:
    divergence = first_divergence(_lines(args.left), _lines(args.right))
    if divergence is None:
        print("identical")
        return EXIT_OK
    print(f"line {divergence.line}:")
    print(f"  {args.left}: {divergence.left}")
    print(f"  {args.right}: {divergence.right}")
    return EXIT_FAILURE
