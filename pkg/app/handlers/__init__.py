"""
Handlers package
"""
import argparse

from . import bench, diff, run, verify


def setup_parsers(parser: argparse.ArgumentParser) -> None:
    """Настройка всех команд"""
    subparsers = parser.add_subparsers(dest="command", required=True)
    run.register(subparsers)
    verify.register(subparsers)
    bench.register(subparsers)
    diff.register(subparsers)
