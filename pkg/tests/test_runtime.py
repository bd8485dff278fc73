"""
Ядро рантайма: теги, планировщик, соединения, таймеры, дедлайны, трасса
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import pytest

from app.errors import ConfigurationError, SimulationFault
from app.runtime import (
    DeadlineStatus,
    Event,
    Reactor,
    Runtime,
    Tag,
    Trace,
    TraceEvent,
    TraceKind,
    first_divergence,
    to_payload,
)

MS = 1_000_000


class Source(Reactor):
    """Пишет номер тика в выход по таймеру"""

    def __init__(self, runtime: Runtime, name: str = "source", period_ns: int = 100 * MS) -> None:
        super().__init__(name, runtime)
        self.out = self.output("out", int)
        self.clock = self.timer("clock", 0, period_ns)
        self.count = 0
        self.reaction(self.emit, triggers=[self.clock], effects=[self.out])

    def emit(self) -> None:
        self.out.set(self.count)
        self.count += 1


class Sink(Reactor):
    def __init__(self, runtime: Runtime, name: str = "sink", dtype: type = int) -> None:
        super().__init__(name, runtime)
        self.inp = self.input("inp", dtype)
        self.received: list[tuple[Tag, object]] = []
        self.reaction(self.on_input, triggers=[self.inp])

    def on_input(self) -> None:
        self.received.append((self.tag, self.inp.value))


class Relay(Reactor):
    def __init__(self, runtime: Runtime, name: str) -> None:
        super().__init__(name, runtime)
        self.inp = self.input("inp", int)
        self.out = self.output("out", int)
        self.reaction(self.forward, triggers=[self.inp], effects=[self.out])

    def forward(self) -> None:
        self.out.set(self.inp.value)


@dataclass
class Payload:
    elapsed_ns: Optional[int]


class Watched(Reactor):
    """Реакция с дедлайном на входе"""

    def __init__(self, runtime: Runtime, deadline_ns: int) -> None:
        super().__init__("watched", runtime)
        self.inp = self.input("inp", Payload)
        self.calls: list[str] = []
        self.reaction(
            self.on_input,
            triggers=[self.inp],
            deadline_ns=deadline_ns,
            handler=self.on_miss,
        )

    def on_input(self) -> None:
        self.calls.append("body")

    def on_miss(self) -> None:
        self.calls.append("handler")


class Feeder(Reactor):
    def __init__(self, runtime: Runtime, values: list[Payload]) -> None:
        super().__init__("feeder", runtime)
        self.values = list(values)
        self.out = self.output("out", Payload)
        self.clock = self.timer("clock", 0, 100 * MS)
        self.reaction(self.emit, triggers=[self.clock], effects=[self.out])

    def emit(self) -> None:
        if self.values:
            self.out.set(self.values.pop(0))


# ==================== Tag ====================

class TestTag:
    def test_order_is_lexicographic(self):
        assert Tag(0, 5) < Tag(1, 0)
        assert Tag(1, 0) < Tag(1, 1)
        assert sorted([Tag(2, 0), Tag(1, 3), Tag(1, 0)]) == [Tag(1, 0), Tag(1, 3), Tag(2, 0)]

    def test_zero_delay_advances_microstep(self):
        assert Tag(100, 2).delay(0) == Tag(100, 3)

    def test_positive_delay_resets_microstep(self):
        assert Tag(100, 2).delay(500 * MS) == Tag(100 + 500 * MS, 0)

    def test_negative_values_rejected(self):
        with pytest.raises(ValueError):
            Tag(-1, 0)
        with pytest.raises(ValueError):
            Tag(0, 0).delay(-1)


# ==================== Scheduling ====================

class TestScheduling:
    def test_events_processed_in_tag_order(self, runtime):
        sink = Sink(runtime)
        runtime.finalize()
        for tag in (Tag(300, 0), Tag(100, 1), Tag(100, 0)):
            runtime.schedule(Event(tag, sink.inp, tag.time_ns))
        runtime.run_until(1_000)
        assert [tag for tag, _ in sink.received] == [Tag(100, 0), Tag(100, 1), Tag(300, 0)]

    def test_past_event_is_fault(self, runtime):
        class Late(Reactor):
            def __init__(self, rt):
                super().__init__("late", rt)
                self.inp = self.input("inp")
                self.clock = self.timer("clock", 200, 1_000)
                self.reaction(self.react, triggers=[self.clock])

            def react(self):
                self.runtime.schedule(Event(Tag(100, 0), self.inp))

        Late(runtime)
        with pytest.raises(SimulationFault):
            runtime.run_until(1_000)

    def test_same_tag_event_is_past(self, runtime):
        class Same(Reactor):
            def __init__(self, rt):
                super().__init__("same", rt)
                self.inp = self.input("inp")
                self.clock = self.timer("clock", 0, 1_000)
                self.reaction(self.react, triggers=[self.clock])

            def react(self):
                self.runtime.schedule(Event(self.tag, self.inp))

        Same(runtime)
        with pytest.raises(SimulationFault):
            runtime.run_until(0)

    def test_zero_delay_action_lands_on_next_microstep(self, runtime):
        class Looper(Reactor):
            def __init__(self, rt):
                super().__init__("looper", rt)
                self.clock = self.timer("clock", 50, 1_000)
                self.again = self.action("again")
                self.seen: list[Tag] = []
                self.reaction(self.start, triggers=[self.clock], effects=[self.again])
                self.reaction(self.react, triggers=[self.again])

            def start(self):
                self.again.schedule(0)

            def react(self):
                self.seen.append(self.tag)

        looper = Looper(runtime)
        runtime.run_until(50)
        assert looper.seen == [Tag(50, 1)]

    def test_empty_model_runs_to_empty_trace(self, runtime):
        trace = runtime.run_until(10 * 1_000_000_000)
        assert len(trace) == 0
        assert trace.to_bytes() == b""


# ==================== Connections ====================

class TestConnections:
    @pytest.mark.parametrize("delay_ms", [500, 200, 0])
    def test_delivery_tag(self, runtime, delay_ms):
        source = Source(runtime)
        sink = Sink(runtime)
        runtime.connect(source.out, sink.inp, delay_ms * MS)
        runtime.run_until(0 + delay_ms * MS)
        expected = Tag(delay_ms * MS, 0) if delay_ms else Tag(0, 1)
        assert sink.received[0] == (expected, 0)

    def test_zero_delay_readers_run_after_writers(self, runtime):
        # приёмник объявлен раньше источника, но исполняется позже
        sink = Sink(runtime)
        relay = Relay(runtime, "relay")
        source = Source(runtime)
        runtime.connect(source.out, relay.inp, 0)
        runtime.connect(relay.out, sink.inp, 0)
        runtime.finalize()
        order = sorted(runtime.reactions, key=lambda r: r.index)
        assert [r.owner.name for r in order] == ["source", "relay", "sink"]

    def test_duplicate_writer_rejected(self, runtime):
        first, second = Source(runtime, "a"), Source(runtime, "b")
        sink = Sink(runtime)
        runtime.connect(first.out, sink.inp)
        with pytest.raises(ConfigurationError):
            runtime.connect(second.out, sink.inp)

    def test_dtype_mismatch_rejected(self, runtime):
        source = Source(runtime)
        sink = Sink(runtime, dtype=str)
        with pytest.raises(ConfigurationError):
            runtime.connect(source.out, sink.inp)

    def test_negative_delay_rejected(self, runtime):
        source, sink = Source(runtime), Sink(runtime)
        with pytest.raises(ConfigurationError):
            runtime.connect(source.out, sink.inp, -1)

    def test_zero_delay_cycle_rejected(self, runtime):
        a, b = Relay(runtime, "a"), Relay(runtime, "b")
        runtime.connect(a.out, b.inp, 0)
        runtime.connect(b.out, a.inp, 0)
        with pytest.raises(ConfigurationError, match="cycle"):
            runtime.finalize()

    def test_delayed_cycle_is_allowed(self, runtime):
        a, b = Relay(runtime, "a"), Relay(runtime, "b")
        runtime.connect(a.out, b.inp, 0)
        runtime.connect(b.out, a.inp, 1)
        runtime.finalize()

    def test_topology_frozen_after_finalize(self, runtime):
        source, sink = Source(runtime), Sink(runtime)
        runtime.finalize()
        with pytest.raises(ConfigurationError):
            runtime.connect(source.out, sink.inp)

    def test_second_write_in_one_tag_is_fault(self, runtime):
        class Twice(Reactor):
            def __init__(self, rt):
                super().__init__("twice", rt)
                self.out = self.output("out", int)
                self.clock = self.timer("clock", 0, 1_000)
                self.reaction(self.emit, triggers=[self.clock], effects=[self.out])

            def emit(self):
                self.out.set(1)
                self.out.set(2)

        Twice(runtime)
        with pytest.raises(SimulationFault, match="Second write"):
            runtime.run_until(0)


# ==================== Timers ====================

class TestTimers:
    def test_fires_every_period_including_horizon(self, runtime):
        source = Source(runtime)
        runtime.run_until(1_000 * MS)
        fires = runtime.trace.of_kind(TraceKind.TIMER_FIRE)
        assert len(fires) == 11
        assert [e.tag.time_ns for e in fires] == [i * 100 * MS for i in range(11)]
        assert source.count == 11

    def test_offset_shifts_first_fire(self, runtime):
        class Offset(Reactor):
            def __init__(self, rt):
                super().__init__("offset", rt)
                self.clock = self.timer("clock", 50 * MS, 100 * MS)
                self.fired: list[int] = []
                self.reaction(lambda: self.fired.append(self.tag.time_ns), triggers=[self.clock])

        reactor = Offset(runtime)
        runtime.run_until(300 * MS)
        assert reactor.fired == [50 * MS, 150 * MS, 250 * MS]

    def test_two_timers_interleave(self, runtime):
        Source(runtime, "fast", period_ns=100 * MS)
        Source(runtime, "slow", period_ns=250 * MS)
        runtime.run_until(500 * MS)
        fires = [(e.tag.time_ns, e.source) for e in runtime.trace.of_kind(TraceKind.TIMER_FIRE)]
        assert fires == sorted(fires, key=lambda f: f[0])
        assert sum(1 for _, src in fires if src == "slow.clock") == 3

    def test_non_positive_period_rejected(self, runtime):
        class Bad(Reactor):
            def __init__(self, rt):
                super().__init__("bad", rt)
                self.timer("clock", 0, 0)

        with pytest.raises(ConfigurationError):
            Bad(runtime)


# ==================== Deadlines ====================

class TestDeadlines:
    @pytest.mark.parametrize(
        "elapsed_ms,expected",
        [
            (300, DeadlineStatus.VIOLATED),
            (250, DeadlineStatus.MET),
            (0, DeadlineStatus.MET),
            (None, DeadlineStatus.VIOLATED),
        ],
    )
    def test_check_deadline_is_strict(self, runtime, elapsed_ms, expected):
        watched = Watched(runtime, 250 * MS)
        reaction = watched.reactions[0]
        elapsed = None if elapsed_ms is None else elapsed_ms * MS
        assert runtime.check_deadline(reaction, elapsed, 250 * MS) is expected

    def test_deadline_without_handler_rejected(self, runtime):
        class NoHandler(Reactor):
            def __init__(self, rt):
                super().__init__("nohandler", rt)
                self.inp = self.input("inp")
                self.reaction(lambda: None, triggers=[self.inp], deadline_ns=1)

        with pytest.raises(ConfigurationError):
            NoHandler(runtime)

    def test_handler_runs_instead_of_body(self, runtime):
        feeder = Feeder(runtime, [Payload(100 * MS), Payload(300 * MS), Payload(None)])
        watched = Watched(runtime, 250 * MS)
        runtime.connect(feeder.out, watched.inp)
        runtime.run_until(1_000 * MS)
        assert watched.calls == ["body", "handler", "handler"]
        misses = runtime.trace.of_kind(TraceKind.DEADLINE_MISS)
        assert [m.payload for m in misses] == [
            f"elapsed_ns={300 * MS} deadline_ns={250 * MS}",
            f"elapsed_ns=none deadline_ns={250 * MS}",
        ]


# ==================== Trace ====================

class TestTrace:
    def test_runs_are_byte_identical(self):
        def run() -> bytes:
            rt = Runtime()
            source, sink = Source(rt), Sink(rt)
            rt.connect(source.out, sink.inp, 500 * MS)
            return rt.run_until(5_000 * MS).to_bytes()

        first = run()
        assert all(run() == first for _ in range(5))

    def test_payload_escaping_survives_parse(self):
        event = TraceEvent(Tag(5, 1), "coach.planner", TraceKind.INSTRUCTION, "a\tb\nc\\d")
        line = event.serialize()
        assert "\n" not in line and line.count("\t") == 3
        assert TraceEvent.parse(line) == event

    def test_read_write(self, tmp_path):
        trace = Trace([
            TraceEvent(Tag(0, 0), "driver.perception", TraceKind.TIMER_FIRE),
            TraceEvent(Tag(100, 0), "car.state", TraceKind.PORT_WRITE, "v=1"),
        ])
        path = tmp_path / "run.trace"
        trace.write(path)
        assert path.read_bytes() == b"0.0\tdriver.perception\ttimer-fire\t\n100.0\tcar.state\tport-write\tv=1\n"
        assert Trace.read(path).events == trace.events

    def test_first_divergence(self):
        assert first_divergence(["a", "b"], ["a", "b"]) is None
        assert first_divergence(["a", "b"], ["a", "c"]) == (2, "b", "c")
        assert first_divergence(["a"], ["a", "b"]) == (2, None, "b")

    def test_payload_formatting(self):
        assert to_payload(None) == ""
        assert to_payload(True) == "true"
        assert to_payload(0.5) == "0.500000"
        assert to_payload(TraceKind.FALLBACK) == "FALLBACK"
        assert to_payload(7) == "7"


# ==================== Middleware ====================

def test_middleware_wraps_every_reaction(runtime):
    seen: list[str] = []

    def spy(handler, reaction, tag):
        seen.append(f"{tag}:{reaction.fqn}")
        return handler()

    source, sink = Source(runtime), Sink(runtime)
    runtime.connect(source.out, sink.inp, 0)
    runtime.middlewares.append(spy)
    runtime.run_until(0)
    assert seen == ["0.0:source.emit", "0.1:sink.on_input"]
    assert sink.received == [(Tag(0, 1), 0)]
