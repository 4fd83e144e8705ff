"""Backend selection: numba-jitted kernels by default, pure numpy on request.

Set HTP_BACKEND=numpy (or HTP_NO_NUMBA=1) to force the numpy fallback path.
HTP_THREADS caps the numba thread pool (all hot kernels here are
single-threaded anyway; the cap exists so batch drivers cannot oversubscribe).
"""
import os

_choice = os.environ.get("HTP_BACKEND", "").strip().lower()
if not _choice:
    _choice = "numpy" if os.environ.get("HTP_NO_NUMBA") else "numba"

USE_NUMBA = _choice == "numba"

if USE_NUMBA:
    try:
        import numba

        nthreads = os.environ.get("HTP_THREADS")
        if nthreads:
            numba.set_num_threads(max(1, int(nthreads)))
    except ImportError:
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"


def njit_or_py(*args, **kwargs):
    """Decorator: numba.njit on the numba path, identity otherwise."""
    if USE_NUMBA:
        import numba

        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]):
        return args[0]

    def deco(fn):
        return fn

    return deco
