import logging
import logging.config
import sys
from pathlib import Path
from typing import Dict, Any, Optional

PACKAGE_LOGGERS = ("quantum", "protocol", "games", "equilibrium", "workflow")


def setup_logging(log_level: str = "WARNING", log_dir: Optional[str] = None) -> logging.Logger:
    """Set up logging configuration.

    Console output goes to stderr so that stdout carries only result data.
    File handlers are added when ``log_dir`` is given.
    """
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"

    handlers: Dict[str, Any] = {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "standard",
            "level": log_level,
            "stream": sys.stderr
        }
    }
    active_handlers = ["console"]

    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        handlers["file"] = {
            "class": "logging.FileHandler",
            "filename": str(Path(log_dir) / "qgames.log"),
            "formatter": "standard",
            "level": log_level
        }
        handlers["error_file"] = {
            "class": "logging.FileHandler",
            "filename": str(Path(log_dir) / "errors.log"),
            "formatter": "detailed",
            "level": "ERROR"
        }
        active_handlers += ["file", "error_file"]

    formatters = {
        "standard": {
            "format": log_format,
            "datefmt": date_format
        },
        "detailed": {
            "format": log_format + "\nException: %(exc_info)s",
            "datefmt": date_format
        }
    }

    loggers = {
        name: {
            "level": log_level,
            "handlers": active_handlers,
            "propagate": False
        }
        for name in PACKAGE_LOGGERS
    }

    config: Dict[str, Any] = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": formatters,
        "handlers": handlers,
        "loggers": loggers
    }

    logging.config.dictConfig(config)

    workflow_logger = logging.getLogger("workflow")
    workflow_logger.debug("Logging configuration initialized")
    return workflow_logger
