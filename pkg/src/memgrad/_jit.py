"""Optional numba acceleration.

Set ``MEMGRAD_DISABLE_NUMBA=1`` before import to run every kernel as plain
numpy. Both paths execute the same source.
"""

import os

_FLAG = os.environ.get("MEMGRAD_DISABLE_NUMBA", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """``numba.njit`` with fixed options, or the identity when disabled.

    ``fastmath`` stays off: traces must be bit-reproducible and NaN checks
    must survive compilation.
    """
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True, fastmath=False)(func)
    return func

