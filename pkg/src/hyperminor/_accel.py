"""Optional numba acceleration.

Set ``HYPERMINOR_DISABLE_NUMBA=1`` to force the pure-numpy kernels.
"""
import os

_FLAG = os.environ.get("HYPERMINOR_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(fn):
    """Compile ``fn`` with numba if available; otherwise return None."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True, nogil=True)(fn)
