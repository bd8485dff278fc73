"""
Services package: бэкенды инференса
"""
from .base import AgentBackend, Completion
from .factory import BackendConfig, BackendKind, create_backend, parse_backend
from .ollama_service import OllamaService
from .oracle import OracleBackend, oracle_response
from .records import InferenceRecord, RecordingBackend, read_records, write_records
from .replay import ReplayBackend

__all__ = [
    "AgentBackend",
    "BackendConfig",
    "BackendKind",
    "Completion",
    "InferenceRecord",
    "OllamaService",
    "OracleBackend",
    "RecordingBackend",
    "ReplayBackend",
    "create_backend",
    "oracle_response",
    "parse_backend",
    "read_records",
    "write_records",
]
