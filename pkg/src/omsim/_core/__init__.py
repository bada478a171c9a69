"""Kernel backend selection: compiled extension with pure-Python fallback.

Importing this package binds ``evolve_const``, ``evolve_full`` and
``propagator_full`` from the Cython extension when it is built, otherwise
from the reference implementation.  Set ``OMSIM_PURE_PYTHON=1`` to force
the fallback (used by the backend-comparison benchmark and tests).
"""
from __future__ import annotations

import os

if os.environ.get("OMSIM_PURE_PYTHON", "") not in ("", "0"):
    from . import _pyref as _impl
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pyref as _impl

BACKEND = "compiled" if _impl.COMPILED else "python"
evolve_const = _impl.evolve_const
evolve_full = _impl.evolve_full
propagator_full = _impl.propagator_full

__all__ = ["BACKEND", "evolve_const", "evolve_full", "propagator_full"]
