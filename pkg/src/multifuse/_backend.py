"""Kernel backend selection.

The compiled extension is used when it imports; setting
``MULTIFUSE_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _fallback

BACKENDS = {"python": _fallback}

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _kernels = None
else:
    BACKENDS["compiled"] = _kernels

if _kernels is not None and os.environ.get("MULTIFUSE_PURE_PYTHON", "") in ("", "0"):
    NAME = "compiled"
else:
    NAME = "python"

kernels = BACKENDS[NAME]


def get(name: str | None = None):
    """Return the kernel module ``name`` (default: the active backend)."""
    if name is None:
        return kernels
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
