import logging
import os
import threading
from typing import Optional

_LOGGER_NAME = "zo_accsgd"
_FORMAT = "[%(asctime)s] %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S"

_configured = False
_configure_lock = threading.Lock()


def _configure(logger: logging.Logger) -> None:
    global _configured
    with _configure_lock:
        if _configured:
            return
        _attach_handler(logger)
        _configured = True


def _attach_handler(logger: logging.Logger) -> None:
    level_name = os.environ.get("ZO_LOG_LEVEL", "").upper()
    log_file = os.environ.get("ZO_LOG_FILE")
    formatter = logging.Formatter(_FORMAT, datefmt=_DATEFMT)

    if log_file:
        handler: logging.Handler = logging.FileHandler(log_file, mode="a", encoding="utf-8")
        default_level = logging.INFO
    else:
        handler = logging.StreamHandler()
        default_level = logging.WARNING
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.setLevel(getattr(logging, level_name, default_level) if level_name else default_level)
    logger.propagate = False


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Return the package logger, or a child of it."""
    root = logging.getLogger(_LOGGER_NAME)
    _configure(root)
    return root.getChild(name) if name else root


def log(message: str, level: int = logging.INFO) -> None:
    get_logger().log(level, message)


def warn(message: str) -> None:
    log(message, logging.WARNING)
