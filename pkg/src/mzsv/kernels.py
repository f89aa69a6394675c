"""Kernel backend selection: compiled extension when available, else the
pure-Python twin. ``MZSV_FORCE_PYTHON_KERNELS=1`` forces the fallback (used
by tests and the backend benchmark)."""

from __future__ import annotations

import os

from . import _fpkernels_py

if os.environ.get("MZSV_FORCE_PYTHON_KERNELS") == "1":
    _impl = _fpkernels_py
else:
    try:
        from . import _fpkernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _fpkernels_py

BACKEND: str = _impl.BACKEND
nested_chain_advance = _impl.nested_chain_advance
weighted_chain_advance = _impl.weighted_chain_advance


def backends():
    """All importable kernel backends, keyed by name."""
    found = {_fpkernels_py.BACKEND: _fpkernels_py}
    try:
        from . import _fpkernels  # type: ignore[attr-defined]
        found[_fpkernels.BACKEND] = _fpkernels
    except ImportError:
        pass
    return found
