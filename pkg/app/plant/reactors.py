"""
Реакторы Car и Environment
"""
from __future__ import annotations

from typing import Optional, Protocol

from app.runtime import Reactor, Runtime, Timer, TraceKind

from .kinematics import plant_react
from .models import IDLE_COMMAND, Brake, CarState, Direction, DriverCommand, Lane, Observation


class Envelope(Protocol):
    def bounds(self, s: float) -> tuple[float, float, float]: ...


class Car(Reactor):
    """Автомобиль: держит последнюю пришедшую команду и интегрирует на каждом такте.

    Такт 0 публикует начальное состояние без интегрирования.
    """

    def __init__(
        self,
        runtime: Runtime,
        *,
        initial: CarState,
        clock: Timer,
        dt_ns: int,
        actuation_hold_ns: int,
    ) -> None:
        super().__init__("car", runtime)
        self.command = self.input("command", DriverCommand)
        self.act = self.input("act", Brake)
        self.fallback = self.input("fallback", Brake)
        self.state_out = self.output("state", CarState)

        self.state = initial
        self.held: DriverCommand = IDLE_COMMAND
        self.dt_ns = dt_ns
        self.actuation_hold_ns = actuation_hold_ns
        self.brake_until_ns = -1
        self._started = False

        self.reaction(self.on_command, triggers=[self.command])
        self.reaction(self.on_actuation, triggers=[self.act, self.fallback])
        self.reaction(self.integrate, triggers=[clock], effects=[self.state_out])

    def on_command(self) -> None:
        self.held = self.command.value

    def on_actuation(self) -> None:
        origin = "fallback" if self.fallback.present else "act"
        now = self.tag.time_ns
        # повторные команды продлевают торможение, а не суммируются
        self.brake_until_ns = max(self.brake_until_ns, now + self.actuation_hold_ns)
        self.record(TraceKind.BRAKE_ENGAGED, f"origin={origin} until_ns={self.brake_until_ns}")

    def integrate(self) -> None:
        if self._started:
            now = self.tag.time_ns
            actuation: Optional[Brake] = Brake.EMERGENCY if self.brake_until_ns > now else None
            self.state = plant_react(self.held, actuation, self.state, self.dt_ns)
        self._started = True
        self.state_out.set(self.state)


class Environment(Reactor):
    """Окружение: полоса движения, коридор скорости и проверка головы водителя"""

    def __init__(
        self,
        runtime: Runtime,
        *,
        envelope: Envelope,
        course_length: float,
        initial_lane: Lane,
        lane_change_hold_ns: int,
        head_check_window_ns: int,
    ) -> None:
        super().__init__("environment", runtime)
        self.state_in = self.input("state", CarState)
        self.observation = self.output("observation", Observation)

        self.envelope = envelope
        self.course_length = course_length
        self.lane = initial_lane
        self.lane_change_hold_ns = lane_change_hold_ns
        self.head_check_window_ns = head_check_window_ns
        self._steer = Direction.CENTER
        self._steer_since_ns = 0
        self._head_right_ns: Optional[int] = None
        self.history: list[Observation] = []

        self.reaction(self.on_state, triggers=[self.state_in], effects=[self.observation])

    def on_state(self) -> None:
        state: CarState = self.state_in.value
        now = self.tag.time_ns

        if state.steer != self._steer:
            self._steer = state.steer
            self._steer_since_ns = now
        if now - self._steer_since_ns >= self.lane_change_hold_ns:
            if state.steer == Direction.RIGHT:
                self.lane = Lane.RIGHT
            elif state.steer == Direction.LEFT:
                self.lane = Lane.LEFT

        if state.head == Direction.RIGHT:
            self._head_right_ns = now
        head_checked = (
            self._head_right_ns is not None
            and now - self._head_right_ns < self.head_check_window_ns
        )

        lower, desirable, upper = self.envelope.bounds(state.displacement)
        observation = Observation(
            tag=self.tag,
            state=state,
            lane=self.lane,
            lower=lower,
            desirable=desirable,
            upper=upper,
            head_checked=head_checked,
            course_length=self.course_length,
        )
        self.history.append(observation)
        self.observation.set(observation)
