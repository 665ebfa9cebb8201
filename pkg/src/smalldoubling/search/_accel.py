"""Selects between numba-compiled kernels and their plain-Python originals.

Set ``SMALLDOUBLING_JIT=0`` to force the fallback path.  The fallback is
also used automatically when numba cannot be imported.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_OFF = {"0", "false", "no", "off"}


def jit_requested():
    return os.environ.get("SMALLDOUBLING_JIT", "1").strip().lower() not in _OFF


HAVE_NUMBA = numba is not None
USE_JIT = HAVE_NUMBA and jit_requested()


def njit(fn):
    """Compile ``fn`` with numba when available, else return ``None``."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True, nogil=True)(fn)
