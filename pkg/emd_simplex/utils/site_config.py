import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from emd_simplex.api.errors import EmdConfigError


CONFIG_ENV_VAR = "EMD_SIMPLEX_CONFIG"
CONFIG_FILENAME = "emd_simplex.json"

EMD_DEFAULTS: Dict[str, Any] = {
    "emd_log_level": "WARNING",
    "emd_oracle_budget": 1_000_000,
    "emd_max_dimension": 20,
    "emd_fuzz_threads": os.cpu_count() or 4,
}

# Environment overrides, applied after the file.
_ENV_KEYS = {
    "EMD_LOG_LEVEL": "emd_log_level",
    "EMD_ORACLE_BUDGET": "emd_oracle_budget",
    "EMD_MAX_DIMENSION": "emd_max_dimension",
    "EMD_FUZZ_THREADS": "emd_fuzz_threads",
}

_INT_KEYS = ("emd_oracle_budget", "emd_max_dimension", "emd_fuzz_threads")

# Child of the package logger; utils.logging reads this module, so no import back.
LOG = logging.getLogger("emd_simplex.site_config")


def _config_path(path: Optional[Union[str, Path]]) -> Optional[Path]:
    """Resolve which config file to read: explicit path, then $EMD_SIMPLEX_CONFIG, then ./emd_simplex.json."""
    if path:
        return Path(path)
    env = os.getenv(CONFIG_ENV_VAR)
    if env:
        return Path(env)
    local = Path.cwd() / CONFIG_FILENAME
    return local if local.exists() else None


def _normalise(data: Mapping[str, Any], source: str) -> Dict[str, Any]:
    cfg = dict(EMD_DEFAULTS)
    cfg.update({k: v for k, v in data.items() if v is not None})
    for key in _INT_KEYS:
        try:
            cfg[key] = int(cfg[key])
        except (TypeError, ValueError):
            raise EmdConfigError(f"{source}: {key} must be an integer, got {cfg[key]!r}")
        if cfg[key] < 1:
            raise EmdConfigError(f"{source}: {key} must be >= 1, got {cfg[key]}")
    cfg["emd_log_level"] = str(cfg["emd_log_level"]).upper()
    return cfg


def get_site_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Return the effective configuration.

    Keys missing from the file fall back to EMD_DEFAULTS; EMD_* environment variables win
    over the file. A named file that does not exist is an error, a missing default file is not.
    """
    cfg_path = _config_path(path)
    data: Dict[str, Any] = {}
    source = "<defaults>"
    if cfg_path is not None:
        source = str(cfg_path)
        try:
            raw = cfg_path.read_text(encoding="utf-8")
            data = json.loads(raw or "{}")
        except FileNotFoundError:
            raise EmdConfigError(f"Config file not found: {cfg_path}")
        except (OSError, json.JSONDecodeError) as e:
            raise EmdConfigError(f"Failed to read/parse {cfg_path}: {e}")
        if not isinstance(data, dict):
            raise EmdConfigError(f"{cfg_path}: top-level JSON value must be an object")

    for env_key, cfg_key in _ENV_KEYS.items():
        val = os.getenv(env_key)
        if val:
            data[cfg_key] = val

    return _normalise(data, source)


def write_site_config(path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    """Write a normalised config file atomically and return what was written.

    Existing keys in the file are kept unless ``overrides`` replaces them.
    """
    cfg_path = Path(path)
    current: Dict[str, Any] = {}
    if cfg_path.exists():
        try:
            current = json.loads(cfg_path.read_text(encoding="utf-8") or "{}")
        except (OSError, json.JSONDecodeError) as e:
            raise EmdConfigError(f"Failed to read/parse {cfg_path}: {e}")
    current.update(overrides or {})
    data = _normalise(current, str(cfg_path))

    cfg_path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=cfg_path.parent, suffix=".json.tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        os.replace(tmp_name, cfg_path)
        LOG.info("Wrote config %s", cfg_path)
    except Exception:
        LOG.exception("Failed to write %s", cfg_path)
        try:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return data
