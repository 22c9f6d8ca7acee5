"""Optional numba acceleration.

Set ``RAINBOW_FORGE_JIT=0`` to run every kernel as plain Python over numpy
arrays. Both paths execute the same source, so results are identical.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_ENABLED = numba is not None and os.environ.get("RAINBOW_FORGE_JIT", "1").lower() not in (
    "0",
    "false",
    "no",
    "off",
)

NUMBA_OPTS = {"cache": True, "nogil": True}


def njit(func):
    """Compile ``func`` with numba when it is available and enabled."""
    if numba is None:
        return func
    return numba.njit(func, **NUMBA_OPTS)


def select(py_func, jit_func):
    return jit_func if JIT_ENABLED else py_func
