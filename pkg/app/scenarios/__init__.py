"""
Scenarios package: сценарии, коридоры скорости, критерии успеха
"""
from .criteria import CriterionResult, evaluate
from .envelope import (
    Classification,
    Reason,
    SafetyEnvelope,
    classify,
    classify_velocity,
    desirable_velocity,
)
from .loader import BUILTIN_SCENARIOS, load_scenario, load_template, parse_scenario
from .models import OracleMessages, ScenarioKind, ScenarioSpec

__all__ = [
    "BUILTIN_SCENARIOS",
    "Classification",
    "CriterionResult",
    "OracleMessages",
    "Reason",
    "SafetyEnvelope",
    "ScenarioKind",
    "ScenarioSpec",
    "classify",
    "classify_velocity",
    "desirable_velocity",
    "evaluate",
    "load_scenario",
    "load_template",
    "parse_scenario",
]
