"""Kernel backend selection.

The compiled extension is used when importable; set PROPNET_PURE=1 to force
the pure-Python fallback.  ``get_backend`` exposes both for benchmarking.
"""

from __future__ import annotations

import os

from . import pykernels


def _select():
    if os.environ.get("PROPNET_PURE"):
        return pykernels
    try:
        from . import _speedups  # type: ignore[attr-defined]

        return _speedups
    except ImportError:
        return pykernels


impl = _select()
BACKEND = impl.BACKEND


def get_backend(name: str | None = None):
    """Resolve a kernel module by name: None/'auto', 'python' or 'cython'."""
    if name is None or name == "auto":
        return impl
    if name == "python":
        return pykernels
    if name == "cython":
        from . import _speedups  # type: ignore[attr-defined]

        return _speedups
    raise ValueError(f"unknown kernel backend {name!r}")
