"""
Plant package: автомобиль и окружение
"""
from .kinematics import (
    ACCELERATOR_ACCEL,
    BRAKE_ACCEL,
    EMERGENCY_DECEL,
    command_to_accel,
    plant_react,
    step_displacement,
    step_velocity,
)
from .models import (
    IDLE_COMMAND,
    Accelerator,
    Brake,
    CarState,
    CommandOverride,
    Direction,
    DriverCommand,
    Lane,
    Observation,
    StepParams,
)
from .reactors import Car, Environment

__all__ = [
    "ACCELERATOR_ACCEL",
    "BRAKE_ACCEL",
    "EMERGENCY_DECEL",
    "IDLE_COMMAND",
    "Accelerator",
    "Brake",
    "Car",
    "CarState",
    "CommandOverride",
    "Direction",
    "DriverCommand",
    "Environment",
    "Lane",
    "Observation",
    "StepParams",
    "command_to_accel",
    "plant_react",
    "step_displacement",
    "step_velocity",
]
