"""
Исключения симулятора
"""


class CoachSimError(Exception):
    """Базовое исключение симулятора"""


class ConfigurationError(CoachSimError):
    """Ошибка конфигурации: топология, шаблоны, параметры запуска.

    Обнаруживается до начала прогона.
    """


class ScenarioLoadError(ConfigurationError):
    """Ошибка загрузки файла сценария"""

    def __init__(self, message: str, field_path: str = "") -> None:
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}" if field_path else message)


class SimulationFault(CoachSimError):
    """Жёсткий сбой во время прогона: симуляция прерывается"""


class ReplayError(SimulationFault):
    """Ошибка воспроизведения записанной трассы инференса"""


class ReplayExhaustedError(ReplayError):
    """Трасса инференса закончилась раньше, чем запросы"""


class ReplayDivergenceError(ReplayError):
    """Промпт не совпал с записанным (строгий режим)"""


class ParseError(CoachSimError):
    """Ответ модели не соответствует формату Signal|Message"""


class BackendError(CoachSimError):
    """Ошибка транспорта или тела ответа живого бэкенда"""
