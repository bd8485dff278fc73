"""
Загрузка сценариев из YAML
"""
from __future__ import annotations

from pathlib import Path

import yaml
from loguru import logger
from pydantic import ValidationError

from app.coach.prompt import PromptTemplate
from app.config import settings
from app.errors import ScenarioLoadError

from .models import ScenarioSpec

DATA_DIR = Path(__file__).parent / "data"

BUILTIN_SCENARIOS: dict[str, Path] = {
    "stop-sign": DATA_DIR / "stop-sign.yaml",
    "speed-change": DATA_DIR / "speed-change.yaml",
    "lane-change": DATA_DIR / "lane-change.yaml",
}


def _field_path(loc: tuple) -> str:
    return ".".join(str(part) for part in loc)


def parse_scenario(data: object, *, source: Path | None = None) -> ScenarioSpec:
    """Валидирует словарь сценария; ошибка указывает путь к полю."""
    if not isinstance(data, dict):
        raise ScenarioLoadError("scenario file must be a mapping", str(source or ""))
    try:
        spec = ScenarioSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ScenarioLoadError(first["msg"], _field_path(first["loc"])) from e
    spec._source = source
    return spec


def load_scenario(path: str | Path) -> ScenarioSpec:
    """Сценарий по пути к файлу или по имени встроенного сценария."""
    path = BUILTIN_SCENARIOS.get(str(path), Path(path))
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ScenarioLoadError(f"cannot read scenario file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ScenarioLoadError(f"invalid YAML in {path}: {e}") from e

    spec = parse_scenario(data, source=path.resolve())
    # шаблон проверяется сразу, а не во время прогона
    load_template(spec)
    logger.debug(f"📄 Scenario '{spec.id}' loaded from {path}")
    return spec


def load_template(spec: ScenarioSpec) -> PromptTemplate:
    return PromptTemplate.load(
        spec.template_path(),
        max_tokens=settings.max_tokens,
        temperature=settings.temperature,
    )
