"""Backend selection for the hot kernels.

Every kernel in :mod:`hamspec.kernels` ships two implementations: a numba
``@njit`` version and a pure-numpy version.  The active one is chosen once at
import time.  Set ``HAMSPEC_DISABLE_NUMBA=1`` to force the numpy path (numba
missing has the same effect).
"""
from __future__ import annotations

import os

_DISABLED = os.environ.get("HAMSPEC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by HAMSPEC_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[no-redef]
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def backend() -> str:
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"


def pick(numba_impl, numpy_impl):
    return numba_impl if HAVE_NUMBA else numpy_impl
