"""Kernel backend selection.

The compiled Cython extension is preferred when present; the pure numpy
module is the fallback. Set CONEMOEA_KERNELS=pure (or =c) to force one.
Both expose the same functions and make identical decisions.
"""

from __future__ import annotations

import importlib
import os

_KNOWN = {"c", "compiled", "pure", "python", ""}


def get_backend(name: str):
    """Return the kernel module for ``name`` ('c' or 'pure')."""
    if name in ("c", "compiled"):
        return importlib.import_module("conemoea._kernels._speed")
    if name in ("pure", "python"):
        return importlib.import_module("conemoea._kernels.pure")
    raise ValueError(f"unknown kernel backend {name!r}")


_requested = os.environ.get("CONEMOEA_KERNELS", "").lower()
if _requested not in _KNOWN:
    raise ValueError(f"CONEMOEA_KERNELS={_requested!r}; expected 'c' or 'pure'")

if _requested in ("pure", "python"):
    _impl = get_backend("pure")
    BACKEND = "pure"
else:
    try:
        _impl = get_backend("c")
        BACKEND = "c"
    except ImportError:
        if _requested in ("c", "compiled"):
            raise
        _impl = get_backend("pure")
        BACKEND = "pure"

dominates = _impl.dominates
eps_dominates = _impl.eps_dominates
cone_dominates = _impl.cone_dominates
scan_pareto = _impl.scan_pareto
scan_eps = _impl.scan_eps
scan_cone = _impl.scan_cone
scan_archive = _impl.scan_archive
nondominated_rank = _impl.nondominated_rank
spea2_raw = _impl.spea2_raw
