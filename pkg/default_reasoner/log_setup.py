"""Logging helpers: one stderr handler, bracketed component tags."""

from __future__ import annotations

import logging
import sys

_FORMAT = "[%(tag)s] %(levelname)s %(message)s"
_configured = False


class _TagFilter(logging.Filter):
    """Adds the short component tag (last dotted segment of the logger name)."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.tag = record.name.rsplit(".", 1)[-1]
        return True


def configure_logging(level: str | int = "WARNING") -> None:
    """Install the stderr handler on the package root logger (idempotent)."""
    global _configured
    root = logging.getLogger("default_reasoner")
    root.setLevel(level if isinstance(level, int) else level.upper())
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.addFilter(_TagFilter())
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
