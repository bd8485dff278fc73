#!/usr/bin/env python3
"""
Перезапись эталонных трасс tests/golden/<id>.trace оракулом
"""
import sys
from pathlib import Path

# Добавляем корневую директорию проекта в PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app.scenarios import load_scenario  # noqa: E402
from app.scenarios.loader import BUILTIN_SCENARIOS  # noqa: E402
from app.services import OracleBackend  # noqa: E402
from app.simulation import run_simulation  # noqa: E402

GOLDEN_DIR = project_root / "tests" / "golden"


def main():
    """Главная функция"""
    ids = sys.argv[1:] or sorted(BUILTIN_SCENARIOS)
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for scenario_id in ids:
        spec = load_scenario(scenario_id)
        result = run_simulation(spec, OracleBackend(spec))
        path = GOLDEN_DIR / f"{spec.id}.trace"
        result.trace.write(path)
        print(f"✅ {path.relative_to(project_root)}: {len(result.trace)} entries")
    print("📝 Review the diff before committing: golden traces pin the semantics")


if __name__ == "__main__":
    main()
