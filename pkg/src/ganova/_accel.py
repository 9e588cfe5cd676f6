"""Numba switch.

Hot kernels are decorated with :func:`jit`. When numba is importable and the
environment variable ``GANOVA_DISABLE_NUMBA`` is unset (or falsy), they are
compiled with ``numba.njit``; otherwise the decorator is a no-op and callers
dispatch to the pure-numpy variants instead.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_REQUESTED = os.environ.get("GANOVA_DISABLE_NUMBA", "").strip().lower() in _FALSY
USE_NUMBA = numba is not None and NUMBA_REQUESTED

numba_default = {
    "nopython": True,
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "error_model": "numpy",
}


def jit(func=None, **kwargs):
    """Compile ``func`` with numba when acceleration is enabled."""
    options = {**numba_default, **kwargs}

    def wrap(f):
        if USE_NUMBA:
            return numba.jit(**options)(f)
        return f

    if callable(func):
        return wrap(func)
    return wrap


def backend():
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if USE_NUMBA else "numpy"
