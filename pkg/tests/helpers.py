"""
Вспомогательные классы для тестов
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence
from unittest.mock import MagicMock

import requests

from app.coach.models import PromptDoc
from app.config import ms_to_ns
from app.plant.models import CarState, Direction, Lane, Observation
from app.runtime import Tag
from app.scenarios import SafetyEnvelope, ScenarioSpec
from app.services.base import AgentBackend, Completion

MS = 1_000_000


def make_observation(
    spec: ScenarioSpec,
    s: float,
    v: float,
    *,
    head: Direction = Direction.CENTER,
    steer: Direction = Direction.CENTER,
    head_checked: bool = False,
    lane: Lane = Lane.LEFT,
    tag: Tag = Tag(0, 0),
) -> Observation:
    lower, desirable, upper = SafetyEnvelope(spec).bounds(s)
    return Observation(
        tag=tag,
        state=CarState(velocity=v, displacement=s, head=head, steer=steer),
        lane=lane,
        lower=lower,
        desirable=desirable,
        upper=upper,
        head_checked=head_checked,
        course_length=spec.course_length_m,
    )


class ScriptedBackend(AgentBackend):
    """Отдаёт заданные ответы по очереди, затем ``fallback_raw``"""

    name = "scripted"

    def __init__(
        self,
        responses: Iterable[str] = (),
        *,
        latency_ms: float = 50,
        fallback_raw: str = "NONE|",
        error_at: Sequence[int] = (),
    ) -> None:
        self.responses = deque(responses)
        self.latency_ns = ms_to_ns(latency_ms)
        self.fallback_raw = fallback_raw
        self.error_at = set(error_at)
        self.prompts: list[PromptDoc] = []

    def complete(self, prompt: PromptDoc) -> Completion:
        index = len(self.prompts)
        self.prompts.append(prompt)
        if index in self.error_at:
            return Completion(latency_ns=self.latency_ns, error="scripted failure")
        raw = self.responses.popleft() if self.responses else self.fallback_raw
        return Completion(raw=raw, latency_ns=self.latency_ns)


class FakeClock:
    """Часы для живого бэкенда: каждая пара вызовов (начало, конец) даёт заданную латентность"""

    def __init__(self, latencies_ms: Sequence[float]) -> None:
        self.latencies_ns = [ms_to_ns(value) for value in latencies_ms]
        self.now = 1_000_000_000
        self.calls = 0
        self.started: Optional[int] = None

    def __call__(self) -> int:
        if self.started is None:
            self.started = self.now
            return self.now
        latency = self.latencies_ns[self.calls % len(self.latencies_ns)]
        self.calls += 1
        self.now = self.started + latency
        self.started = None
        return self.now


def fake_response(content: Optional[str] = None, *, status: int = 200, body: Optional[dict] = None):
    response = MagicMock()
    response.status_code = status
    response.json.return_value = body if body is not None else {
        "model": "llama3.1:8b",
        "message": {"role": "assistant", "content": content},
        "done": True,
    }
    if status >= 400:
        response.raise_for_status.side_effect = requests.HTTPError(f"{status} Server Error")
    else:
        response.raise_for_status.return_value = None
    return response


def fake_session(replies: Sequence[object]) -> MagicMock:
    """Сессия requests, которая по кругу отдаёт ответы или бросает исключения."""
    session = MagicMock(spec=requests.Session)
    state = {"index": 0}

    def post(url, json=None, timeout=None):
        reply = replies[state["index"] % len(replies)]
        state["index"] += 1
        if isinstance(reply, Exception):
            raise reply
        if isinstance(reply, str):
            return fake_response(reply)
        return reply

    session.post.side_effect = post
    return session
