"""
Environment configuration, CLI defaults and logging setup.

Supports a verbose development mode (TIMESPACE_ENV=dev) and a quieter
production mode, which is the default.
"""

import logging
import os
import sys

# Environment: "dev" for local development, "prod" otherwise
ENVIRONMENT = os.getenv("TIMESPACE_ENV", "prod")

LOG_LEVEL = os.getenv("TIMESPACE_LOG_LEVEL", "DEBUG" if ENVIRONMENT == "dev" else "INFO")

# Threads used by the data-parallel stages; results do not depend on it.
# Kept as text here and checked when a run configuration is resolved.
WORKERS = os.getenv("TIMESPACE_WORKERS", "1")

OUTPUT_DIR = os.getenv("TIMESPACE_OUTPUT_DIR", "out")

LOG_FORMAT = "[%(asctime)s] %(levelname)s %(name)s - %(message)s"

# Defaults for every CLI flag; YAML run files and flags override these
DEFAULTS: dict[str, object] = {
    "frames": 4,
    "dt": 1.0,
    "flow": "analytic",
    "noise": 0.0,
    "seed": 0,
    "eps_abs": 0.01,
    "eps_rel": 0.02,
    "map": "ttc_inv",
    "vmin": 0.0,
    "vmax": None,
    "t": 0.0,
    "t1": 0.0,
    "t2": 1.0,
    "workers": WORKERS,
}

FLOW_MODES = ("analytic", "finite-diff")


def is_dev_mode() -> bool:
    """Check if running in development mode."""
    return ENVIRONMENT == "dev"


def is_prod_mode() -> bool:
    """Check if running in production mode."""
    return ENVIRONMENT == "prod"


def configure_logging(level: str | int | None = None) -> None:
    """
    Send library logs to stderr.

    Safe to call more than once; the handler installed by a previous call
    is replaced, not duplicated.
    """
    root = logging.getLogger("timespace")
    for handler in list(root.handlers):
        if getattr(handler, "_timespace", False):
            root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._timespace = True
    root.addHandler(handler)
    root.setLevel(level if level is not None else LOG_LEVEL)
