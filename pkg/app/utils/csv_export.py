"""
Экспорт прогона в CSV для построения графиков
"""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from app.plant.models import Observation
from app.runtime import TraceEvent, TraceKind

CSV_COLUMNS = (
    "time_s",
    "displacement_m",
    "velocity_mps",
    "lower_bound",
    "upper_bound",
    "event_marker",
)

# по убыванию приоритета
MARKER_PRIORITY: tuple[tuple[TraceKind, str], ...] = (
    (TraceKind.DEADLINE_MISS, "deadline_miss"),
    (TraceKind.FALLBACK, "fallback"),
    (TraceKind.ACTUATION, "actuation"),
    (TraceKind.INSTRUCTION, "instruction"),
    (TraceKind.SUPPRESSED, "suppressed"),
)
NO_MARKER = "none"


def _markers_by_tick(events: Iterable[TraceEvent], period_ns: int) -> dict[int, set[TraceKind]]:
    marked = {kind for kind, _ in MARKER_PRIORITY}
    ticks: dict[int, set[TraceKind]] = {}
    for event in events:
        if event.kind in marked:
            ticks.setdefault(event.tag.time_ns // period_ns, set()).add(event.kind)
    return ticks


def marker_for(kinds: set[TraceKind]) -> str:
    for kind, name in MARKER_PRIORITY:
        if kind in kinds:
            return name
    return NO_MARKER


def build_rows(
    observations: Sequence[Observation], events: Iterable[TraceEvent], period_ns: int
) -> list[dict[str, object]]:
    """Одна строка на такт; метка берётся из событий в интервале [T, T + период)."""
    markers = _markers_by_tick(events, period_ns)
    rows = []
    for obs in observations:
        time_ns = obs.tag.time_ns
        rows.append(
            {
                "time_s": round(time_ns / 1e9, 3),
                "displacement_m": round(obs.state.displacement, 6),
                "velocity_mps": round(obs.state.velocity, 6),
                "lower_bound": round(obs.lower, 6),
                "upper_bound": round(obs.upper, 6),
                "event_marker": marker_for(markers.get(time_ns // period_ns, set())),
            }
        )
    return rows


def write_csv(
    path: str | Path,
    observations: Sequence[Observation],
    events: Iterable[TraceEvent],
    period_ns: int,
) -> int:
    rows = build_rows(observations, events, period_ns)
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return len(rows)
