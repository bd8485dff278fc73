"""
Общие фикстуры тестов
"""
from __future__ import annotations

import pytest

from app.config import Settings
from app.runtime import Runtime
from app.scenarios import BUILTIN_SCENARIOS, ScenarioSpec, load_scenario
from app.services import OracleBackend
from app.simulation import Simulation


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="перезаписать tests/golden/<id>.trace текущими трассами оракула",
    )


@pytest.fixture(scope="session")
def update_golden(request) -> bool:
    return request.config.getoption("--update-golden")


@pytest.fixture
def clean_settings() -> Settings:
    """Настройки по умолчанию, без .env"""
    return Settings(_env_file=None)


@pytest.fixture
def runtime() -> Runtime:
    return Runtime()


@pytest.fixture(scope="session")
def stop_sign() -> ScenarioSpec:
    return load_scenario("stop-sign")


@pytest.fixture(scope="session")
def speed_change() -> ScenarioSpec:
    return load_scenario("speed-change")


@pytest.fixture(scope="session")
def lane_change() -> ScenarioSpec:
    return load_scenario("lane-change")


@pytest.fixture(scope="session", params=sorted(BUILTIN_SCENARIOS))
def any_scenario(request) -> ScenarioSpec:
    return load_scenario(request.param)


@pytest.fixture
def make_simulation():
    """Фабрика симуляций с оракулом по умолчанию"""

    def factory(spec: ScenarioSpec, backend=None, **kwargs) -> Simulation:
        return Simulation(spec, backend or OracleBackend(spec), **kwargs)

    return factory
