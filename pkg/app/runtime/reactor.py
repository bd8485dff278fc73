"""
Реакторы: порты, таймеры, логические действия и реакции.

Реактор объявляет свои триггеры и реакции в конструкторе; исполняет их
:class:`~app.runtime.scheduler.Runtime` в порядке тегов.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from app._compat import StrEnum
from typing import TYPE_CHECKING, Any, Callable, Iterable, Optional

from app.errors import ConfigurationError

from .tag import Tag
from .trace import TraceKind

if TYPE_CHECKING:
    from .scheduler import Runtime


class DeadlineStatus(StrEnum):
    MET = "met"
    VIOLATED = "violated"


def to_payload(value: Any) -> str:
    """Каноническое текстовое представление значения для трассы."""
    if value is None:
        return ""
    canonical = getattr(value, "canonical", None)
    if callable(canonical):
        return canonical()
    if isinstance(value, Enum):
        return value.name
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


class Trigger:
    """То, что может запустить реакцию: порт, таймер или действие"""

    def __init__(self, owner: Reactor, name: str) -> None:
        self.owner = owner
        self.name = name
        self.value: Any = None
        self.present = False

    @property
    def fqn(self) -> str:
        return f"{self.owner.fqn}.{self.name}"

    def _deliver(self, value: Any) -> None:
        self.value = value
        self.present = True

    def _clear(self) -> None:
        self.value = None
        self.present = False

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}({self.fqn})>"


class Port(Trigger):
    def __init__(self, owner: Reactor, name: str, dtype: type = object) -> None:
        super().__init__(owner, name)
        self.dtype = dtype


class InputPort(Port):
    pass


class OutputPort(Port):
    def set(self, value: Any) -> None:
        """Записать значение в текущий тег (не более одного раза за тег)."""
        self.owner.runtime.write(self, value)


class Timer(Trigger):
    def __init__(self, owner: Reactor, name: str, offset_ns: int, period_ns: int) -> None:
        super().__init__(owner, name)
        self.offset_ns = offset_ns
        self.period_ns = period_ns


class Action(Trigger):
    """Логическое действие: событие самому себе через задержку"""

    def schedule(self, delay_ns: int, payload: Any = None) -> Tag:
        return self.owner.runtime.schedule_action(self, delay_ns, payload)


@dataclass(eq=False)
class Reaction:
    owner: Reactor
    name: str
    body: Callable[[], None]
    triggers: tuple[Trigger, ...]
    effects: tuple[Trigger, ...] = ()
    deadline_ns: Optional[int] = None
    handler: Optional[Callable[[], None]] = None
    declared: int = 0
    index: int = field(default=-1)

    @property
    def fqn(self) -> str:
        return f"{self.owner.fqn}.{self.name}"

    def elapsed_ns(self) -> Optional[int]:
        """Физическая задержка, переданная в полезной нагрузке триггера.

        None означает, что результат так и не был получен.
        """
        for trigger in self.triggers:
            if trigger.present and hasattr(trigger.value, "elapsed_ns"):
                return trigger.value.elapsed_ns
        return 0

    def __repr__(self) -> str:
        return f"<Reaction({self.fqn}, index={self.index})>"


class Reactor:
    """Базовый класс всех реакторов"""

    def __init__(self, name: str, runtime: Runtime, parent: Optional[Reactor] = None) -> None:
        self.name = name
        self.parent = parent
        self.runtime = runtime
        self.reactions: list[Reaction] = []
        runtime.register_reactor(self)

    @property
    def fqn(self) -> str:
        return f"{self.parent.fqn}.{self.name}" if self.parent else self.name

    @property
    def tag(self) -> Tag:
        return self.runtime.current_tag

    # -------------------- Declarations --------------------
    def input(self, name: str, dtype: type = object) -> InputPort:
        return InputPort(self, name, dtype)

    def output(self, name: str, dtype: type = object) -> OutputPort:
        return OutputPort(self, name, dtype)

    def action(self, name: str) -> Action:
        return Action(self, name)

    def timer(self, name: str, offset_ns: int, period_ns: int) -> Timer:
        return self.runtime.register_timer(self, offset_ns, period_ns, name=name)

    def reaction(
        self,
        body: Callable[[], None],
        *,
        triggers: Iterable[Trigger],
        effects: Iterable[Trigger] = (),
        deadline_ns: Optional[int] = None,
        handler: Optional[Callable[[], None]] = None,
    ) -> Reaction:
        name = getattr(body, "__name__", f"reaction_{len(self.reactions)}")
        if deadline_ns is not None and handler is None:
            raise ConfigurationError(f"Reaction {self.fqn}.{name} has a deadline but no handler")
        if deadline_ns is not None and deadline_ns < 0:
            raise ConfigurationError(f"Reaction {self.fqn}.{name}: negative deadline")
        reaction = Reaction(
            owner=self,
            name=name,
            body=body,
            triggers=tuple(triggers),
            effects=tuple(effects),
            deadline_ns=deadline_ns,
            handler=handler,
        )
        self.reactions.append(reaction)
        self.runtime.register_reaction(reaction)
        return reaction

    # -------------------- Trace --------------------
    def record(self, kind: TraceKind, payload: str = "", source: Optional[str] = None) -> None:
        self.runtime.record(kind, source or self.fqn, payload)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}({self.fqn})>"
