"""
Продольная кинематика: явная схема Эйлера с шагом такта восприятия
"""
from __future__ import annotations

from typing import Optional

from .models import Accelerator, Brake, CarState, DriverCommand, StepParams

ACCELERATOR_ACCEL: dict[Accelerator, float] = {
    Accelerator.COASTING: -0.1,
    Accelerator.CRUISE: 0.1,
    Accelerator.NORMAL_ACCEL: 2.0,
    Accelerator.STRONG_ACCEL: 4.0,
    Accelerator.NONE: 0.0,
}

BRAKE_ACCEL: dict[Brake, float] = {
    Brake.GENTLE: -3.0,
    Brake.EMERGENCY: -9.0,
}

EMERGENCY_DECEL = BRAKE_ACCEL[Brake.EMERGENCY]


def command_to_accel(cmd: DriverCommand) -> float:
    """Ускорение для дискретного поведения водителя. Тормоз важнее газа."""
    if cmd.brake in BRAKE_ACCEL:
        return BRAKE_ACCEL[cmd.brake]
    return ACCELERATOR_ACCEL[cmd.accelerator]


def step_velocity(v: float, a: float, dt: float) -> float:
    if dt <= 0:
        raise ValueError("dt must be positive")
    return max(0.0, v + a * dt)


def step_displacement(s: float, v: float, dt: float) -> float:
    # скорость берётся до обновления
    if dt <= 0:
        raise ValueError("dt must be positive")
    return s + v * dt


def plant_react(
    cmd: DriverCommand,
    actuation: Optional[Brake],
    state: CarState,
    dt_ns: int,
) -> CarState:
    """Один шаг автомобиля.

    Команда коуча (экстренное торможение) перекрывает любую команду водителя;
    руль и голова копируются из команды водителя.
    """
    accel = BRAKE_ACCEL[actuation] if actuation in BRAKE_ACCEL else command_to_accel(cmd)
    params = StepParams(accel=accel, dt_ns=dt_ns)
    return CarState(
        velocity=step_velocity(state.velocity, params.accel, params.dt),
        displacement=step_displacement(state.displacement, state.velocity, params.dt),
        steer=cmd.steer,
        head=cmd.head,
    )
