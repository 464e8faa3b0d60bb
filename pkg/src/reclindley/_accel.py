"""Optional numba acceleration.

Set ``RECLINDLEY_DISABLE_NUMBA=1`` before import to run every kernel through
its pure-Python/numpy path. Both paths must produce identical results; the
sampler kernels in particular are bit-reproducible across them.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("RECLINDLEY_DISABLE_NUMBA", "0") in ("", "0")


def kernel(fn):
    """Compile ``fn`` with ``numba.njit`` when acceleration is enabled.

    The undecorated function stays reachable as ``.py_func`` in both modes.
    """
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    fn.py_func = fn
    return fn
