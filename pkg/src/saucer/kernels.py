"""Backend selection for the RK4 maneuver kernel.

Prefers the compiled extension; falls back to the pure-Python mirror when the
extension was not built. Set SAUCER_PURE_PYTHON=1 to force the fallback (the
benchmark uses this to compare the two).
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SAUCER_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

ATTACKING = _kernels_py.ATTACKING
LANDING = _kernels_py.LANDING
G2_SIMPLE = _kernels_py.G2_SIMPLE
G2_STRICT = _kernels_py.G2_STRICT

velocity = _impl.velocity
rk4_constant = _impl.rk4_constant

pure = _kernels_py
