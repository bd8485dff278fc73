"""
Логическое время: тег (наносекунды + микрошаг)
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True, slots=True)
class Tag:
    """Точка логического времени.

    Порядок лексикографический: сначала time_ns, затем microstep.
    """

    time_ns: int
    microstep: int = 0

    def __post_init__(self) -> None:
        if self.time_ns < 0 or self.microstep < 0:
            raise ValueError(f"Invalid tag ({self.time_ns}, {self.microstep})")

    def delay(self, delay_ns: int) -> Tag:
        """Тег доставки через задержку: d > 0 сбрасывает микрошаг, d = 0 его увеличивает."""
        if delay_ns < 0:
            raise ValueError(f"Negative delay {delay_ns}")
        if delay_ns == 0:
            return Tag(self.time_ns, self.microstep + 1)
        return Tag(self.time_ns + delay_ns, 0)

    def __str__(self) -> str:
        return f"{self.time_ns}.{self.microstep}"


ZERO = Tag(0, 0)
