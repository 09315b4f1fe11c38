"""Logging setup for servo PIDNN simulations.

Run lifecycle (scenario start/finish, artifacts written) is logged at INFO,
per-run details at DEBUG. The per-sample control loop never logs: a 20 s
run is 40 000 plant sub-steps.
"""

import logging
import sys
from pathlib import Path


ROOT_LOGGER_NAME = "servo_pidnn"

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(level: str = "INFO", log_file: str | None = None) -> None:
    """Configure the package's root logger.

    Console output goes to stderr so that metric tables printed on stdout
    stay machine-readable. Calling this again replaces earlier handlers.

    Args:
        level: Log level name (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        log_file: Optional log file path; parent directories are created.

    Raises:
        ValueError: If the level name is unknown.
    """
    log_level = parse_log_level(level)
    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(
            logging.FileHandler(log_path, mode="a", encoding="utf-8")
        )

    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(log_level)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    for handler in handlers:
        handler.setLevel(log_level)
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    """Get a logger placed under the package's root logger.

    Args:
        name: Module name, typically __name__ from the calling module.
    """
    if name == ROOT_LOGGER_NAME or name.startswith(f"{ROOT_LOGGER_NAME}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


def parse_log_level(level: str) -> int:
    """Translate a level name into its logging constant.

    Raises:
        ValueError: If the level name is unknown.
    """
    allowed = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
    normalized = level.upper()
    if normalized not in allowed:
        raise ValueError(
            f"Invalid log level: {level}. Must be one of: {', '.join(allowed)}"
        )
    return logging.getLevelName(normalized)
