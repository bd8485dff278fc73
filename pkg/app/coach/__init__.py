"""
Coach package: инференс и планировщик
"""
from .inference import InferenceResult, InferenceStatus, LLMInference, infer, quantize_latency_ns
from .models import CoachOutput, ControlSignal, PlannerMode, PromptDoc
from .parser import parse_response, serialize
from .planner import Planner, PlannerStep, ThrottleDecision, planner_step, throttle
from .prompt import PLACEHOLDERS, PromptTemplate, build_prompt
from .reactor import Coach

__all__ = [
    "PLACEHOLDERS",
    "Coach",
    "CoachOutput",
    "ControlSignal",
    "InferenceResult",
    "InferenceStatus",
    "LLMInference",
    "Planner",
    "PlannerMode",
    "PlannerStep",
    "PromptDoc",
    "PromptTemplate",
    "ThrottleDecision",
    "build_prompt",
    "infer",
    "parse_response",
    "planner_step",
    "quantize_latency_ns",
    "serialize",
    "throttle",
]
