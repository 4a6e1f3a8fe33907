import os
import sys
import logging
from pathlib import Path

import yaml

from src.errors import ConfigError

REPO_ROOT = Path(__file__).resolve().parents[1]
DEFAULT_CONFIG = REPO_ROOT / "conf" / "config.yaml"
BUDGET_ENV = "METRICDIM_BUDGET"


def load_config(path=None):
    """Read the project configuration file and apply environment overrides."""
    path = Path(path) if path else DEFAULT_CONFIG
    with open(path, "r") as f:
        try:
            cfg = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"{path}: {e}")
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: expected a mapping at the top level")

    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            budget = int(raw)
        except ValueError:
            raise ConfigError(f"{BUDGET_ENV} must be an integer, got {raw!r}")
        if budget <= 0:
            raise ConfigError(f"{BUDGET_ENV} must be positive, got {budget}")
        cfg.setdefault("solver", {})["node_budget"] = budget
    return cfg


def solver_budget(cfg):
    return int(cfg.get("solver", {}).get("node_budget", 10**8))


def setup_logging(cfg, quiet=False):
    """Send log records to stderr so stdout stays machine-readable."""
    log_cfg = cfg.get("logging", {})
    level = "WARNING" if quiet else log_cfg.get("level", "INFO")
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format=log_cfg.get("format", "%(levelname)s %(name)s: %(message)s"),
        stream=sys.stderr,
        force=True,
    )
