"""JIT switch for the scalar kernels.

Kernels are written once as plain Python loops over ``math`` calls. When numba
is importable they are compiled with ``numba.njit``; setting the environment
variable ``SPHCOLLAPSE_DISABLE_NUMBA=1`` (or uninstalling numba) runs the very
same source as ordinary Python instead. The flag is read once, at import.
"""

from __future__ import annotations

import os

_FLAG = "SPHCOLLAPSE_DISABLE_NUMBA"


def _flag_set() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    if _flag_set():
        raise ImportError("numba disabled via " + _FLAG)
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def jit(func=None, **options):
    """Compile with ``numba.njit(cache=True)`` when enabled, else return ``func``.

    Usable bare (``@jit``) or with options (``@jit(fastmath=False)``).
    """

    def wrap(f):
        if not HAVE_NUMBA:
            return f
        opts = {"cache": True}
        opts.update(options)
        return numba.njit(**opts)(f)

    if func is None:
        return wrap
    return wrap(func)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
