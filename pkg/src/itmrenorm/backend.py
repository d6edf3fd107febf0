"""Compute-backend selection for the hot numeric kernels.

Set ITMRENORM_BACKEND=numpy to force the pure-numpy fallbacks; anything
else (or unset) uses numba when it is importable.
"""

from __future__ import annotations

import os

_env = os.environ.get("ITMRENORM_BACKEND", "").strip().lower()

if _env == "numpy":
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


def njit_maybe(func):
    """Apply numba.njit(cache=True) when the numba backend is active."""
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True)(func)
    return func
