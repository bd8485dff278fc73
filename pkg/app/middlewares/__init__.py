"""
Middlewares package
"""
from typing import Iterable

from app.runtime import ReactionMiddleware, Runtime

from .logging import LoggingMiddleware


def setup_middlewares(runtime: Runtime, extra: Iterable[ReactionMiddleware] = ()) -> None:
    """Настройка всех middleware"""
    # Middleware для логирования
    runtime.middlewares.append(LoggingMiddleware())
    runtime.middlewares.extend(extra)
