"""Kernel backend selection.

The hot loops in :mod:`grushinlab.kernels` exist twice: a numba ``@njit``
version and a vectorized numpy version.  Set ``GRUSHINLAB_PURE_NUMPY=1`` to
dispatch to the numpy path.  Without numba installed the numpy path is the
only one.
"""

import os

_FLAG = "GRUSHINLAB_PURE_NUMPY"

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


def _flag_set():
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = HAVE_NUMBA and not _flag_set()


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
