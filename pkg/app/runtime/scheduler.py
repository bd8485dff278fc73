"""
Детерминированный планировщик событий (ядро рантайма)
"""
from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import partial
from typing import Any, Callable, Optional, Protocol

from loguru import logger

from app.errors import ConfigurationError, SimulationFault

from .reactor import (
    Action,
    DeadlineStatus,
    InputPort,
    OutputPort,
    Reaction,
    Reactor,
    Timer,
    Trigger,
    to_payload,
)
from .tag import Tag
from .trace import Trace, TraceEvent, TraceKind


@dataclass(frozen=True, slots=True)
class Event:
    tag: Tag
    target: Trigger
    payload: Any = None


@dataclass(frozen=True, slots=True)
class Connection:
    source: OutputPort
    destination: InputPort
    delay_ns: int = 0


class ReactionMiddleware(Protocol):
    def __call__(self, handler: Callable[[], None], reaction: Reaction, tag: Tag) -> Any: ...


class Runtime:
    """Однопоточный планировщик логического времени.

    Внутри одного тега реакции исполняются в топологическом порядке,
    зафиксированном при :meth:`finalize`.
    """

    def __init__(self) -> None:
        self.reactors: list[Reactor] = []
        self.reactions: list[Reaction] = []
        self.connections: list[Connection] = []
        self.timers: list[Timer] = []
        self.middlewares: list[ReactionMiddleware] = []
        self.trace = Trace()
        self.current_tag: Optional[Tag] = None

        self._queue: list[tuple[Tag, int, Event]] = []
        self._sequence = itertools.count()
        self._dependents: dict[Trigger, list[Reaction]] = defaultdict(list)
        self._outgoing: dict[OutputPort, list[Connection]] = defaultdict(list)
        self._written: set[OutputPort] = set()
        self._finalized = False

    # -------------------- Topology --------------------
    def register_reactor(self, reactor: Reactor) -> None:
        self._ensure_open()
        self.reactors.append(reactor)

    def register_reaction(self, reaction: Reaction) -> None:
        self._ensure_open()
        reaction.declared = len(self.reactions)
        self.reactions.append(reaction)
        for trigger in reaction.triggers:
            self._dependents[trigger].append(reaction)

    def register_timer(
        self, owner: Reactor, offset_ns: int, period_ns: int, name: str = "timer"
    ) -> Timer:
        self._ensure_open()
        if period_ns <= 0:
            raise ConfigurationError(f"Timer {owner.fqn}.{name}: period must be positive")
        if offset_ns < 0:
            raise ConfigurationError(f"Timer {owner.fqn}.{name}: negative offset")
        timer = Timer(owner, name, offset_ns, period_ns)
        self.timers.append(timer)
        return timer

    def connect(self, source: OutputPort, destination: InputPort, delay_ns: int = 0) -> Connection:
        self._ensure_open()
        if not isinstance(source, OutputPort) or not isinstance(destination, InputPort):
            raise ConfigurationError(f"Cannot connect {source!r} -> {destination!r}")
        if delay_ns < 0:
            raise ConfigurationError(f"Negative delay on {source.fqn} -> {destination.fqn}")
        if not issubclass(source.dtype, destination.dtype):
            raise ConfigurationError(
                f"Incompatible ports: {source.fqn} ({source.dtype.__name__}) -> "
                f"{destination.fqn} ({destination.dtype.__name__})"
            )
        for existing in self.connections:
            if existing.destination is destination:
                raise ConfigurationError(
                    f"Port {destination.fqn} already has a writer ({existing.source.fqn})"
                )
        connection = Connection(source, destination, delay_ns)
        self.connections.append(connection)
        self._outgoing[source].append(connection)
        return connection

    def finalize(self) -> None:
        """Фиксирует топологический порядок реакций и планирует первые срабатывания таймеров."""
        if self._finalized:
            return
        self._assign_levels()
        for timer in self.timers:
            self.schedule(Event(Tag(timer.offset_ns, 0), timer))
        self._finalized = True
        logger.debug(
            f"🔧 Topology finalized: {len(self.reactors)} reactors, "
            f"{len(self.reactions)} reactions, {len(self.connections)} connections"
        )

    def _assign_levels(self) -> None:
        edges: dict[Reaction, set[Reaction]] = defaultdict(set)
        for reactor in self.reactors:
            for earlier, later in zip(reactor.reactions, reactor.reactions[1:]):
                edges[earlier].add(later)
        for connection in self.connections:
            if connection.delay_ns:
                continue
            writers = [r for r in self.reactions if connection.source in r.effects]
            readers = self._dependents.get(connection.destination, [])
            for writer in writers:
                edges[writer].update(readers)

        indegree = {reaction: 0 for reaction in self.reactions}
        for targets in edges.values():
            for target in targets:
                indegree[target] += 1

        # Kahn: среди готовых берём объявленную раньше
        ready = [(r.declared, r) for r in self.reactions if indegree[r] == 0]
        heapq.heapify(ready)
        order: list[Reaction] = []
        while ready:
            _, reaction = heapq.heappop(ready)
            reaction.index = len(order)
            order.append(reaction)
            for target in edges.get(reaction, ()):
                indegree[target] -= 1
                if indegree[target] == 0:
                    heapq.heappush(ready, (target.declared, target))

        if len(order) != len(self.reactions):
            cycle = ", ".join(r.fqn for r in self.reactions if indegree[r] > 0)
            raise ConfigurationError(f"Zero-delay cycle between reactions: {cycle}")

    def _ensure_open(self) -> None:
        if self._finalized:
            raise ConfigurationError("Topology is already finalized")

    # -------------------- Scheduling --------------------
    def schedule(self, event: Event) -> None:
        if self.current_tag is not None and event.tag <= self.current_tag:
            raise SimulationFault(
                f"Event for {event.target.fqn} at {event.tag} is in the logical past "
                f"(current tag {self.current_tag})"
            )
        heapq.heappush(self._queue, (event.tag, next(self._sequence), event))

    def schedule_action(self, action: Action, delay_ns: int, payload: Any = None) -> Tag:
        tag = self._now().delay(delay_ns)
        self.schedule(Event(tag, action, payload))
        return tag

    def write(self, port: OutputPort, value: Any) -> None:
        tag = self._now()
        if port in self._written:
            raise SimulationFault(f"Second write to {port.fqn} at {tag}")
        if port.dtype is not object and value is not None and not isinstance(value, port.dtype):
            raise SimulationFault(
                f"Port {port.fqn} expects {port.dtype.__name__}, got {type(value).__name__}"
            )
        self._written.add(port)
        self.record(TraceKind.PORT_WRITE, port.fqn, to_payload(value))
        for connection in self._outgoing.get(port, ()):
            self.schedule(Event(tag.delay(connection.delay_ns), connection.destination, value))

    def record(self, kind: TraceKind, source: str, payload: str = "") -> None:
        self.trace.append(TraceEvent(self._now(), source, kind, payload))

    def _now(self) -> Tag:
        if self.current_tag is None:
            raise SimulationFault("No current tag: the runtime is not executing")
        return self.current_tag

    # -------------------- Deadlines --------------------
    def check_deadline(
        self, reaction: Reaction, elapsed_physical_ns: Optional[int], deadline_ns: int
    ) -> DeadlineStatus:
        """Строгая проверка: нарушение только при elapsed > deadline.

        elapsed=None (результат не получен) считается нарушением.
        """
        if reaction.handler is None:
            raise ConfigurationError(f"Reaction {reaction.fqn} has a deadline but no handler")
        if elapsed_physical_ns is not None and elapsed_physical_ns < 0:
            raise ValueError(f"Negative elapsed time {elapsed_physical_ns}")
        if elapsed_physical_ns is not None and elapsed_physical_ns <= deadline_ns:
            return DeadlineStatus.MET
        if self.current_tag is not None:
            elapsed = "none" if elapsed_physical_ns is None else str(elapsed_physical_ns)
            self.record(
                TraceKind.DEADLINE_MISS,
                reaction.fqn,
                f"elapsed_ns={elapsed} deadline_ns={deadline_ns}",
            )
        return DeadlineStatus.VIOLATED

    # -------------------- Execution --------------------
    def run_until(self, horizon_ns: int) -> Trace:
        """Обрабатывает все события с временем тега ≤ horizon_ns."""
        self.finalize()
        while self._queue and self._queue[0][0].time_ns <= horizon_ns:
            tag = self._queue[0][0]
            self.current_tag = tag
            present: list[Trigger] = []
            triggered: set[Reaction] = set()

            while self._queue and self._queue[0][0] == tag:
                _, _, event = heapq.heappop(self._queue)
                target = event.target
                if target.present:
                    raise SimulationFault(f"Two events for {target.fqn} at {tag}")
                target._deliver(event.payload)
                present.append(target)
                if isinstance(target, Timer):
                    self.record(TraceKind.TIMER_FIRE, target.fqn)
                    self.schedule(Event(Tag(tag.time_ns + target.period_ns, 0), target))
                triggered.update(self._dependents.get(target, ()))

            for reaction in sorted(triggered, key=lambda r: r.index):
                self._invoke(reaction)

            for trigger in present:
                trigger._clear()
            self._written.clear()
        return self.trace

    def _invoke(self, reaction: Reaction) -> None:
        def call() -> None:
            if reaction.deadline_ns is not None:
                status = self.check_deadline(reaction, reaction.elapsed_ns(), reaction.deadline_ns)
                if status is DeadlineStatus.VIOLATED:
                    reaction.handler()
                    return
            reaction.body()

        handler: Callable[[], Any] = call
        for middleware in reversed(self.middlewares):
            handler = partial(middleware, handler, reaction, self.current_tag)
        handler()
