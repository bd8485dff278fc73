"""
Конфигурация симулятора
"""
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки симулятора"""

    # Logging
    log_level: str = Field("INFO", alias="LOG_LEVEL")

    # Логическое время (все значения в миллисекундах, переводятся в нс в рантайме)
    perception_period_ms: int = Field(100, alias="PERCEPTION_PERIOD_MS")
    driver_delay_ms: int = Field(500, alias="DRIVER_DELAY_MS")
    actuation_delay_ms: int = Field(200, alias="ACTUATION_DELAY_MS")
    deadline_ms: int = Field(250, alias="DEADLINE_MS")
    throttle_interval_ms: int = Field(1000, alias="THROTTLE_INTERVAL_MS")
    instruction_hold_ms: int = Field(2000, alias="INSTRUCTION_HOLD_MS")
    # Сколько держится экстренное торможение после прихода команды (один шаг модели)
    actuation_hold_ms: int = Field(100, alias="ACTUATION_HOLD_MS")
    head_check_window_ms: int = Field(1000, alias="HEAD_CHECK_WINDOW_MS")
    lane_change_hold_ms: int = Field(500, alias="LANE_CHANGE_HOLD_MS")
    horizon_s: float = Field(60.0, alias="HORIZON_S")

    # Коридор безопасной скорости
    band_halfwidth_mps: float = Field(2.0, alias="BAND_HALFWIDTH_MPS")
    # Запас "восстановимого" отклонения сверх коридора: дальше начинается ACTUATE
    warning_margin_mps: float = Field(2.0, alias="WARNING_MARGIN_MPS")

    # Параметры генерации
    max_tokens: int = Field(30, alias="MAX_TOKENS")
    temperature: float = Field(0.0, alias="TEMPERATURE")

    # Ollama
    ollama_endpoint: str = Field("http://localhost:11434", alias="OLLAMA_ENDPOINT")
    ollama_model: str = Field("llama3.1:8b", alias="OLLAMA_MODEL")
    ollama_timeout_sec: float = Field(30.0, alias="OLLAMA_TIMEOUT_SEC")

    # Оракул и служебные команды
    oracle_latency_ms: int = Field(50, alias="ORACLE_LATENCY_MS")
    bench_runs: int = Field(300, alias="BENCH_RUNS")
    verify_runs: int = Field(10, alias="VERIFY_RUNS")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    @field_validator("perception_period_ms", "throttle_interval_ms", "actuation_hold_ms")
    @classmethod
    def positive_interval(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("interval must be positive")
        return v

    @field_validator("driver_delay_ms", "actuation_delay_ms", "deadline_ms", "oracle_latency_ms")
    @classmethod
    def non_negative_delay(cls, v: int) -> int:
        if v < 0:
            raise ValueError("delay must be non-negative")
        return v

    @field_validator("ollama_endpoint")
    @classmethod
    def strip_endpoint(cls, v: str) -> str:
        return (v or "").strip().rstrip("/")

    @property
    def perception_period_ns(self) -> int:
        return ms_to_ns(self.perception_period_ms)

    @property
    def horizon_ns(self) -> int:
        return s_to_ns(self.horizon_s)


def ms_to_ns(value: int | float) -> int:
    """Миллисекунды в целые наносекунды логического времени."""
    return int(round(value * 1_000_000))


def s_to_ns(value: int | float) -> int:
    return int(round(value * 1_000_000_000))


# Создаем глобальный экземпляр настроек
settings = Settings()
