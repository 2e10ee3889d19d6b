"""Optional numba acceleration.

Set ``GAUSSCASCADE_DISABLE_NUMBA=1`` to force the pure-numpy path. The flag is
read on every dispatch, so tests and benchmarks can flip it at runtime.
"""

from __future__ import annotations

import os

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def identity(func):
            return func

        return identity


ENV_FLAG = "GAUSSCASCADE_DISABLE_NUMBA"


def numba_enabled() -> bool:
    """True when the compiled kernels should be used."""
    flag = os.environ.get(ENV_FLAG, "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes", "on")
