"""
Driver package
"""
from .instructions import KEYWORD_TABLE, perceive_tick, receive_instruction
from .models import DEFAULT_COMPLIANCE, Directive, DriverScript, ScriptSegment
from .reactor import Driver

__all__ = [
    "DEFAULT_COMPLIANCE",
    "KEYWORD_TABLE",
    "Directive",
    "Driver",
    "DriverScript",
    "ScriptSegment",
    "perceive_tick",
    "receive_instruction",
]
