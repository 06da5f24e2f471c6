"""Selects the search-kernel implementation at import time.

The compiled extension (``factorsearch._kernel``) is preferred; the
pure-Python twin (``factorsearch._pykernel``) is used when the extension is
missing or when the environment variable ``FACTORSEARCH_PURE`` is set to a
non-empty value other than ``0``.  Both expose the same ``run_search`` /
``brute_force`` contract and must produce identical results and counters.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _kernel
except ImportError:  # extension not built; pure fallback
    _kernel = None

_FORCE_PURE = os.environ.get("FACTORSEARCH_PURE", "") not in ("", "0")

BACKENDS = {"pure": _pykernel}
if _kernel is not None:
    BACKENDS["compiled"] = _kernel

DEFAULT_BACKEND = "compiled" if (_kernel is not None and not _FORCE_PURE) else "pure"


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` (or the default backend)."""
    if name is None or name == "auto":
        name = DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {sorted(BACKENDS)}"
        ) from None


def backend_name(name: str | None = None) -> str:
    return get_backend(name).BACKEND_NAME
