"""Backend selection for the prime-field matrix kernels.

At import time the compiled extension (grembed._fpkern, built with Cython)
is picked when present; otherwise everything runs through the generic ring
implementations in grembed.linalg.  Set GREMBED_PURE=1 to force the generic
path, e.g. to benchmark the two backends against each other.
"""

import importlib
import os

try:
    _fast = importlib.import_module("grembed._fpkern")
except ImportError:
    _fast = None

# entries stay below p, products below p^2; keep p^2 inside int64
P_LIMIT = 2**31

_enabled = _fast is not None and os.environ.get("GREMBED_PURE", "") not in (
    "1",
    "true",
    "yes",
)


def available() -> bool:
    """True when the compiled extension importable."""
    return _fast is not None


def enabled() -> bool:
    return _enabled and _fast is not None


def set_enabled(flag: bool) -> bool:
    """Switch the compiled path on or off (used by tests and benchmarks)."""
    global _enabled
    _enabled = bool(flag) and _fast is not None
    return _enabled


def backend_name() -> str:
    return "compiled" if enabled() else "pure"


def prime_field_kernel(ring):
    """The compiled kernel module if it applies to this ring, else None."""
    if (
        _enabled
        and _fast is not None
        and getattr(ring, "kind", None) == "PrimeField"
        and ring.p < P_LIMIT
    ):
        return _fast
    return None
