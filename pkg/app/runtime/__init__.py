"""
Runtime package: логическое время, реакторы и планировщик
"""
from .reactor import (
    Action,
    DeadlineStatus,
    InputPort,
    OutputPort,
    Reaction,
    Reactor,
    Timer,
    to_payload,
)
from .scheduler import Connection, Event, ReactionMiddleware, Runtime
from .tag import ZERO, Tag
from .trace import Divergence, Trace, TraceEvent, TraceKind, first_divergence

__all__ = [
    "Action",
    "Connection",
    "DeadlineStatus",
    "Divergence",
    "Event",
    "InputPort",
    "OutputPort",
    "Reaction",
    "ReactionMiddleware",
    "Reactor",
    "Runtime",
    "Tag",
    "Timer",
    "Trace",
    "TraceEvent",
    "TraceKind",
    "ZERO",
    "first_divergence",
    "to_payload",
]
