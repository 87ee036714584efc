"""Structured logging for the khecke engine.

Everything goes to standard error so that command output on standard output
stays machine-readable. Searches log progress at INFO; the default WARNING
level keeps the CLI quiet unless a cap is hit.
"""
import logging
import sys
from typing import Any

import structlog
from structlog.typing import EventDict, Processor, WrappedLogger

from khecke.infrastructure.config import get_settings


def _add_service(_: WrappedLogger, __: str, event_dict: EventDict) -> EventDict:
    settings = get_settings()
    event_dict.setdefault("service", settings.service_name)
    event_dict.setdefault("environment", settings.environment)
    return event_dict


def _renderer(log_format: str) -> Processor:
    if log_format == "json":
        return structlog.processors.JSONRenderer()
    return structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())


def setup_logging(level: str | None = None) -> None:
    """Route structlog through stdlib logging on standard error.

    ``level`` overrides ``KHECKE_LOG_LEVEL``; the CLI passes its ``--log-level``.
    """
    settings = get_settings()
    level_name = (level or settings.log_level).upper()

    processors: list[Processor] = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        structlog.processors.format_exc_info,
    ]
    if settings.log_format == "json":
        processors.append(_add_service)
    processors.append(_renderer(settings.log_format))

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    level_number = logging.getLevelName(level_name)
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level_number, force=True)

    # joblib workers and uvicorn access lines are noise next to search progress
    for noisy in ("uvicorn", "uvicorn.access", "joblib"):
        logging.getLogger(noisy).setLevel(max(logging.WARNING, level_number))


def get_logger(**kwargs: Any) -> structlog.stdlib.BoundLogger:
    """Get a logger bound to the given context.

    Binding is lazy, so module-level loggers created before ``setup_logging``
    still pick up its configuration.
    """
    return structlog.get_logger(**kwargs)
