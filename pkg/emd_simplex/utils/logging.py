# FILE: emd_simplex/utils/logging.py
"""
Unified logging helpers for emd_simplex.

- One stderr logger per name, formatted as "LEVEL: message" so stdout reports stay clean.
- Honors log level from the emd_simplex config via "emd_log_level" (e.g. "INFO", "DEBUG").
- compact_json for putting structured values on a single log line.
"""

import logging
from typing import Any

from emd_simplex.api.errors import EmdConfigError


# ---------------------------
# Level helpers
# ---------------------------

def _level_from_string(level_str: str, default: int = logging.INFO) -> int:
    """Map string level to logging constant; defaults on unknown."""
    level = getattr(logging, str(level_str).upper(), None)
    return level if isinstance(level, int) else default


def _level_from_site_config(default: int = logging.WARNING) -> int:
    """Read desired log level from config (key: emd_log_level). Raises EmdConfigError on a bad file."""
    from emd_simplex.utils.site_config import get_site_config

    val = get_site_config().get("emd_log_level")
    return _level_from_string(val, default) if val else default


# ---------------------------
# Public logger factory
# ---------------------------

def get_emd_logger(
    name: str = "emd_simplex",
    *,
    default_level: int = logging.WARNING,
) -> logging.Logger:
    """
    Create or return a stderr logger.

    The handler is attached once; calling again with the same name returns the same logger
    without stacking handlers.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        h = logging.StreamHandler()
        h.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
        logger.addHandler(h)
        logger.propagate = False
    try:
        logger.setLevel(_level_from_site_config(default=default_level))
    except EmdConfigError as e:
        logger.setLevel(default_level)
        logger.warning("Config ignored for the log level: %s", e)
    return logger


def set_level(level: Any) -> None:
    """Set the shared logger level from an int or a name like "DEBUG"."""
    if isinstance(level, str):
        level = _level_from_string(level, emd_logger.level)
    emd_logger.setLevel(level)


# Singleton logger used across the package
emd_logger = get_emd_logger()


# ---------------------------
# Format utilities
# ---------------------------

def compact_json(obj: Any, limit: int = 1200) -> str:
    """Compact JSON string for logging; truncate if too long."""
    import json
    try:
        s = json.dumps(obj, ensure_ascii=False, separators=(",", ":"), default=str)
    except Exception:
        s = str(obj)
    return s if len(s) <= limit else s[:limit] + "…(truncated)"

