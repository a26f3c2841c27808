"""
Structured logging for psram-perf.

Events are key-value records on stderr (stdout carries the JSON/CSV
reports). A CLI run binds its command and seed once with `bind_run`, so
every event from the model, sweeps and simulator carries them.
"""

import logging
import sys
from typing import Any

import structlog

from .errors import ConfigError


def get_logger(name: str, **context: Any) -> structlog.BoundLogger:
    """
    Module logger, optionally bound to fixed context.

    Args:
        name: Logger name (typically the module name)
        **context: Key-value pairs bound to every event (e.g. workload="sst")
    """
    logger = structlog.get_logger(name)

    if context:
        logger = logger.bind(**context)

    return logger


def bind_run(command: str, **context: Any) -> None:
    """Attach the current command (and e.g. its seed) to all events that follow."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, **context)


def _level(log_level: str) -> int:
    level = getattr(logging, log_level.upper(), None)
    if not isinstance(level, int):
        raise ConfigError(f"unknown log level {log_level!r}")
    return level


def setup_logging(log_level: str = "WARNING") -> None:
    """
    Route structlog and stdlib logging to stderr at `log_level`.

    Loggers are not cached: tests and repeated CLI invocations may swap
    stderr between calls.

    Raises:
        ConfigError: Unknown level name
    """
    level = _level(log_level)
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level)
