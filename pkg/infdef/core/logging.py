import logging
import logging.config
from typing import Optional

from .config import settings


def configure_logging(level: Optional[str] = None) -> None:
    """Route package logs to stderr at the configured level."""
    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {"default": {"format": settings.log_format}},
            "handlers": {
                "stderr": {
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "formatter": "default",
                }
            },
            "loggers": {
                "infdef": {
                    "handlers": ["stderr"],
                    "level": (level or settings.log_level).upper(),
                    "propagate": False,
                }
            },
        }
    )
