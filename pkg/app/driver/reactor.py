"""
Реактор водителя по сценарию
"""
from __future__ import annotations

from typing import Optional

from loguru import logger

from app.plant.models import DriverCommand
from app.runtime import Reactor, Runtime, Tag, TraceKind

from .instructions import perceive_tick, receive_instruction
from .models import Directive, DriverScript


class Driver(Reactor):
    """Водитель: на каждом такте восприятия выдаёт команду по сценарию.

    Инструкция коуча превращается в директиву, которая включается на первом
    такте строго после её тега и держится ``hold_ns``. Новая директива
    заменяет старую; NoOp ничего не меняет.
    """

    def __init__(self, runtime: Runtime, *, script: DriverScript, period_ns: int, hold_ns: int) -> None:
        super().__init__("driver", runtime)
        self.instr = self.input("instr", str)
        self.command = self.output("command", DriverCommand)
        self.perception = self.timer("perception", 0, period_ns)

        self.script = script
        self.hold_ns = hold_ns
        self.pending: Optional[tuple[Directive, Tag]] = None
        self.active: Optional[Directive] = None
        self.active_until_ns = 0

        self.reaction(self.on_instruction, triggers=[self.instr])
        self.reaction(self.perceive, triggers=[self.perception], effects=[self.command])

    def on_instruction(self) -> None:
        directive = receive_instruction(self.instr.value)
        if directive == Directive.NO_OP:
            logger.trace(f"🙈 Driver ignores instruction '{self.instr.value}'")
            return
        self.pending = (directive, self.tag)

    def perceive(self) -> None:
        now = self.tag
        if self.pending is not None and self.pending[1] < now:
            self.active = self.pending[0]
            self.active_until_ns = now.time_ns + self.hold_ns
            self.pending = None
            self.record(TraceKind.DIRECTIVE, f"{self.active} until_ns={self.active_until_ns}")
        if self.active is not None and now.time_ns >= self.active_until_ns:
            self.active = None
        self.command.set(perceive_tick(now, self.script, self.active))
