"""
Главный файл симулятора
"""
import argparse
import sys
from typing import Optional, Sequence

from loguru import logger

from app.config import settings
from app.handlers import setup_parsers


def setup_logging() -> None:
    """Настройка логирования"""
    logger.remove()
    logger.add(
        sys.stderr,
        level=settings.log_level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
               "<level>{level: <8}</level> | "
               "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
               "<level>{message}</level>",
        colorize=True
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.main",
        description="Deterministic simulator of an LLM-backed driving coach",
    )
    setup_parsers(parser)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Главная функция"""
    setup_logging()
    args = build_parser().parse_args(argv)
    logger.debug(f"🎯 Command: {args.command}")
    try:
        return args.handler(args)
    except KeyboardInterrupt:
        logger.info("👋 Interrupted by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
