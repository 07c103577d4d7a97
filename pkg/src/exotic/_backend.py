"""Kernel backend selection.

The hot loops (ball index moves, operator application, big reductions) have a
numba implementation and a pure numpy twin.  ``EXOTIC_BACKEND=numpy`` or
``EXOTIC_BACKEND=numba`` forces a backend; by default numba is used when it
imports, with a silent fallback to numpy otherwise.
"""

from __future__ import annotations

import os

from .errors import DomainError

BACKEND_ENV = "EXOTIC_BACKEND"


def _select():
    forced = os.environ.get(BACKEND_ENV, "").strip().lower()
    if forced not in ("", "numba", "numpy"):
        raise DomainError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {forced!r}")
    if forced == "numpy":
        from . import _kernels_numpy as k
        return k, "numpy"
    try:
        from . import _kernels_numba as k
        return k, "numba"
    except ImportError:
        if forced == "numba":
            raise
        from . import _kernels_numpy as k
        return k, "numpy"


kernels, BACKEND_NAME = _select()
