"""Backend selection for the numeric kernels.

Kernels are written once with array operations that both numba and numpy
understand.  With numba available they are compiled with ``@njit``; setting
``SCFSEC_DISABLE_NUMBA=1`` (or running without numba installed) leaves them as
plain numpy functions.
"""

import os

_DISABLED = os.environ.get("SCFSEC_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


def maybe_njit(func):
    """``numba.njit(cache=True, nogil=True)`` when enabled, identity otherwise.

    The uncompiled function stays reachable as ``.py_func`` in both modes so
    the benchmark and the cross-backend tests can call it directly.
    """
    if HAS_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    func.py_func = func
    return func
