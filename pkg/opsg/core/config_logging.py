"""Logging configuration module."""
import logging
import uuid
from logging.config import dictConfig
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler

from opsg.core.config import DevConfig, settings

logger = logging.getLogger(__name__)


class RunIdFilter(logging.Filter):
    """Stamp every record with the id of the current CLI run.

    One id is drawn per process; all records of an invocation share it so
    the JSON log can be grouped by run.
    """

    _run_id: str | None = None

    def __init__(self, name: str = "", uuid_length: int = 32, default_value: str = "-") -> None:
        super().__init__(name)
        self.uuid_length = uuid_length
        self.default_value = default_value

    @classmethod
    def current(cls) -> str:
        if cls._run_id is None:
            cls._run_id = uuid.uuid4().hex
        return cls._run_id

    def filter(self, record: logging.LogRecord) -> bool:
        run_id = self.current() or self.default_value
        record.run_id = run_id[: self.uuid_length]
        return True


def stderr_rich_handler(**kwargs) -> RichHandler:
    """Rich console handler bound to stderr; stdout carries command results."""
    return RichHandler(console=Console(stderr=True), **kwargs)


def configure_logging() -> None:
    """Configure package logging with run id support.

    Sets up:
    - Console handler with Rich formatting on stderr
    - Rotating JSON file handler when LOG_FILE is configured
    - Run id filtering for grouping records per invocation
    - Environment-specific log levels
    """
    handlers: dict[str, dict] = {
        "console_handler": {
            "()": stderr_rich_handler,
            "level": "DEBUG",
            "formatter": "console_formatter",
            "filters": ["run_id"],
        },
    }
    all_handlers = ["console_handler"]

    if settings.LOG_FILE:
        Path(settings.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
        handlers["rotating_file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": "DEBUG",
            "formatter": "file_formatter",
            "filename": settings.LOG_FILE,
            "maxBytes": 1024 * 1024 * 1,  # 1MB
            "backupCount": 5,
            "encoding": "utf8",
            "filters": ["run_id"],
        }
        all_handlers.append("rotating_file")

    dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "filters": {
                "run_id": {
                    "()": RunIdFilter,
                    "uuid_length": 8 if isinstance(settings, DevConfig) else 32,
                    "default_value": "-",
                },
            },
            "formatters": {
                "console_formatter": {
                    "class": "logging.Formatter",
                    "datefmt": "%Y-%m-%dT%H:%M:%S",
                    "format": "(%(run_id)s) %(name)s:%(lineno)d - %(message)s",
                },
                "file_formatter": {
                    # {"asctime": "2026-01-07T14:57:54", "msecs": 884.0, "levelname": "INFO", "run_id": "6484f906", "name": "opsg.constructions.spanning_tree", ...}
                    "datefmt": "%Y-%m-%dT%H:%M:%S",
                    "class": "pythonjsonlogger.json.JsonFormatter",
                    "format": "%(asctime)s %(msecs)03dZ %(levelname)-8s %(run_id)s %(name)s %(lineno)d %(message)s",
                },
            },
            "handlers": handlers,
            "loggers": {
                "opsg": {
                    "handlers": all_handlers,
                    "level": settings.LOG_LEVEL,
                    "propagate": False,
                },
            },
        }
    )
    logger.debug(f"Logging configured for run {RunIdFilter.current()[:8]}")
