"""Status-line helpers shared by the CLI, the services and the scripts."""

import sys

import numpy as np

from qdecay.errors import ParameterRangeError


# --------------- Logging helpers ---------------
# Status goes to stderr so stdout/data files stay byte-deterministic.
def print_ok(msg: str):   print(f"✅ {msg}", file=sys.stderr)
def print_warn(msg: str): print(f"⚠️ {msg}", file=sys.stderr)
def print_err(msg: str):  print(f"❌ {msg}", file=sys.stderr)
def print_info(msg: str): print(f"📊 {msg}", file=sys.stderr)


def check_unit_interval(name: str, value: float) -> float:
    """Return value as float if it lies in [0, 1], else raise ParameterRangeError."""
    value = float(value)
    if not np.isfinite(value) or value < 0.0 or value > 1.0:
        raise ParameterRangeError(f"{name} must lie in [0, 1], got {value}")
    return value
