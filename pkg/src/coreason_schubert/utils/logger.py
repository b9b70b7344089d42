# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import sys
from pathlib import Path

from loguru import logger as loguru_logger

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level>"
)

_console_sink: int = -1


def set_console_level(level: str) -> None:
    """Replace the stderr sink; verification runs use DEBUG to trace every identity."""
    global _console_sink
    if _console_sink >= 0:
        loguru_logger.remove(_console_sink)
    _console_sink = loguru_logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT)


def configure_logging(log_dir: str = "logs") -> None:
    """Configures the loguru logger with console and file sinks."""
    global _console_sink
    loguru_logger.remove()
    _console_sink = -1
    set_console_level("INFO")

    log_path = Path(log_dir)
    if not log_path.exists():
        log_path.mkdir(parents=True, exist_ok=True)

    # JSON lines, one record per check outcome or solver step
    loguru_logger.add(
        log_path / "app.log",
        rotation="500 MB",
        retention="10 days",
        serialize=True,
        enqueue=True,
        level="DEBUG",
    )


# Configure logger on import
configure_logging()

# Export logger
logger = loguru_logger
