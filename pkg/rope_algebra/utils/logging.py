# =============================================================================
# rope_algebra/utils/logging.py - Logging Configuration
# =============================================================================
import logging
import sys
from pathlib import Path
from typing import Optional

import structlog

from rope_algebra.config import settings

_SHARED_PROCESSORS = [
    structlog.stdlib.add_log_level,
    structlog.stdlib.add_logger_name,
    structlog.processors.TimeStamper(fmt="iso"),
]

# Route structlog through stdlib logging from import time on, so module-level
# loggers never fall back to structlog's stdout printer.
structlog.configure(
    processors=[structlog.stdlib.filter_by_level]
    + _SHARED_PROCESSORS
    + [structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
    logger_factory=structlog.stdlib.LoggerFactory(),
    wrapper_class=structlog.stdlib.BoundLogger,
    cache_logger_on_first_use=True,
)


def setup_logging(level: Optional[str] = None) -> None:
    """Configure application logging.

    Reports go to stdout, so every handler here writes to stderr or a file.
    """
    if level is None:
        level = "DEBUG" if settings.DEBUG else settings.LOG_LEVEL
    log_level = logging.getLevelName(level.upper())

    console_formatter = structlog.stdlib.ProcessorFormatter(
        processor=structlog.dev.ConsoleRenderer(colors=False),
        foreign_pre_chain=_SHARED_PROCESSORS,
    )
    file_formatter = structlog.stdlib.ProcessorFormatter(
        processor=structlog.processors.JSONRenderer(sort_keys=True),
        foreign_pre_chain=_SHARED_PROCESSORS,
    )

    root_logger = logging.getLogger("rope_algebra")
    root_logger.setLevel(log_level)
    root_logger.handlers.clear()
    root_logger.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)

    if settings.LOG_FILE:
        log_path = Path(settings.LOG_FILE)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(file_formatter)
        root_logger.addHandler(file_handler)

    get_logger("cli").debug("logging configured", level=level)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a logger instance."""
    return structlog.get_logger(f"rope_algebra.{name}")


# Pre-configured loggers for the sub-packages
linalg_logger = get_logger("linalg")
generators_logger = get_logger("generators")
validation_logger = get_logger("validation")
ortho_logger = get_logger("ortho")
attention_logger = get_logger("attention")
cli_logger = get_logger("cli")
