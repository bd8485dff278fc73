"""
Middleware для логирования вызовов реакций
"""
from typing import Any, Callable

from loguru import logger

from app.runtime import Reaction, Tag


class LoggingMiddleware:
    """Логирует каждый вызов реакции и ошибки внутри неё"""

    def __call__(self, handler: Callable[[], Any], reaction: Reaction, tag: Tag) -> Any:
        logger.trace(f"⚙️ {tag} {reaction.fqn}")

        # Выполняем реакцию
        try:
            return handler()
        except Exception as e:
            logger.error(f"❌ Error in reaction {reaction.fqn} at {tag}: {e}")
            raise
