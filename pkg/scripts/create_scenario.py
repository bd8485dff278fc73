#!/usr/bin/env python3
"""
Скрипт для создания заготовки нового сценария (YAML + шаблон промпта)
"""
import sys
from pathlib import Path

import yaml

# Добавляем корневую директорию проекта в PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app.errors import ConfigurationError  # noqa: E402
from app.scenarios import load_scenario  # noqa: E402
from app.scenarios.models import ScenarioKind  # noqa: E402

TEMPLATE = """### system
You are a driving coach sitting next to a beginner driver.
The course is {course_length} meters long.
Answer with exactly one line in the format Signal|Message where Signal is one of NONE, WARNING, ACTUATE.
### user
velocity: {velocity} m/s
displacement: {displacement} m
safe band: {envelope_lower} to {envelope_upper} m/s
"""


def scenario_skeleton(scenario_id: str, kind: ScenarioKind) -> dict:
    """Минимальный сценарий, который проходит валидацию загрузчика"""
    return {
        "id": scenario_id,
        "kind": kind.value,
        "title": scenario_id.replace("-", " ").capitalize(),
        "course_length_m": 100,
        "v0_mps": 10,
        "prompt_template": f"templates/{scenario_id}.txt",
        "driver_script": {"segments": [{"from_ms": 0, "accelerator": "Cruise"}]},
    }


def create_scenario(scenario_id: str, kind: ScenarioKind, target_dir: Path) -> Path:
    scenario_file = target_dir / f"{scenario_id}.yaml"
    template_file = target_dir / "templates" / f"{scenario_id}.txt"
    if scenario_file.exists():
        raise FileExistsError(scenario_file)

    template_file.parent.mkdir(parents=True, exist_ok=True)
    template_file.write_text(TEMPLATE, encoding="utf-8")
    scenario_file.write_text(
        yaml.safe_dump(scenario_skeleton(scenario_id, kind), sort_keys=False), encoding="utf-8"
    )
    # сразу проверяем, что заготовка загружается
    load_scenario(scenario_file)
    return scenario_file


def main():
    """Главная функция"""
    if len(sys.argv) < 3:
        print("❌ Usage: python scripts/create_scenario.py <id> <kind> [target_dir]")
        print(f"📝 Kinds: {', '.join(k.value for k in ScenarioKind)}")
        sys.exit(1)

    scenario_id = sys.argv[1]
    if not scenario_id.replace("-", "").isalnum():
        print("❌ Scenario id should contain only letters, numbers and dashes")
        sys.exit(1)
    try:
        kind = ScenarioKind(sys.argv[2])
    except ValueError:
        print(f"❌ Unknown kind {sys.argv[2]!r}")
        sys.exit(1)
    target_dir = Path(sys.argv[3]) if len(sys.argv) > 3 else Path("scenarios")

    try:
        scenario_file = create_scenario(scenario_id, kind, target_dir)
    except FileExistsError as e:
        print(f"❌ Scenario file already exists: {e}")
        sys.exit(1)
    except ConfigurationError as e:
        print(f"❌ Skeleton does not load: {e}")
        sys.exit(2)

    print(f"✅ Created scenario: {scenario_file}")
    print("📝 Edit driver_script and the prompt template, then run:")
    print(f"   python -m app.main run --scenario {scenario_file}")


if __name__ == "__main__":
    main()
