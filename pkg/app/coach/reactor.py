"""
Составной реактор Coach = LLMInference + Planner
"""
from __future__ import annotations

from typing import TYPE_CHECKING

from app.runtime import Reactor, Runtime

from .inference import LLMInference
from .planner import Planner
from .prompt import PromptTemplate

if TYPE_CHECKING:
    from app.services.base import AgentBackend


class Coach(Reactor):
    def __init__(
        self,
        runtime: Runtime,
        *,
        backend: AgentBackend,
        template: PromptTemplate,
        deadline_ns: int,
        throttle_interval_ns: int,
    ) -> None:
        super().__init__("coach", runtime)
        self.inference = LLMInference(
            runtime, self, backend=backend, template=template, deadline_ns=deadline_ns
        )
        self.planner = Planner(runtime, self, throttle_interval_ns=throttle_interval_ns)
        runtime.connect(self.inference.ctrl, self.planner.ctrl)

        # внешние порты составного реактора
        self.observation = self.inference.observation
        self.instr = self.planner.instr
        self.act = self.planner.act
        self.fallback = self.inference.fallback_out
