"""Structured logging initialisation utilities."""
from __future__ import annotations

import logging
import logging.config
from pathlib import Path
from typing import Any, Dict

import structlog
import yaml

DEFAULT_LOGGING_PATH = Path("config/logging.yaml")

SHARED_PROCESSORS = [
    structlog.contextvars.merge_contextvars,
    structlog.stdlib.add_logger_name,
    structlog.stdlib.add_log_level,
    structlog.processors.TimeStamper(fmt="iso"),
]


def build_formatter() -> structlog.stdlib.ProcessorFormatter:
    """JSON-lines formatter referenced from the dictConfig file."""
    return structlog.stdlib.ProcessorFormatter(
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            structlog.processors.JSONRenderer(),
        ],
        foreign_pre_chain=SHARED_PROCESSORS,
    )


def configure_logging(config_path: Path = DEFAULT_LOGGING_PATH, *, level: str | None = None) -> None:
    """Configure stdlib logging from YAML and route structlog through it.

    Output goes to stderr; stdout is reserved for command results.
    """
    if config_path.exists():
        with config_path.open("r", encoding="utf-8") as handle:
            config: Dict[str, Any] = yaml.safe_load(handle)
        logging.config.dictConfig(config)
    else:
        handler = logging.StreamHandler()
        handler.setFormatter(build_formatter())
        root = logging.getLogger()
        root.handlers[:] = [handler]
    if level is not None:
        logging.getLogger().setLevel(level.upper())
        logging.getLogger("app").setLevel(level.upper())
    structlog.configure(
        processors=SHARED_PROCESSORS
        + [
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
