"""
structlog configuration for the command line entry point
"""

import logging
import sys

import structlog

from src.config import get_log_settings


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """Configure structlog to write to stderr with console or JSON rendering"""
    settings = get_log_settings()
    level = level or settings.log_level
    fmt = fmt or settings.log_format

    renderer = structlog.processors.JSONRenderer() if fmt == "json" else structlog.dev.ConsoleRenderer()
    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            renderer
        ],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, level)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
