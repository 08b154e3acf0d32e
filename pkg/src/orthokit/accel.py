"""Optional numba acceleration with a pure-numpy fallback.

Set ORTHOKIT_NO_NUMBA=1 to force the numpy code paths even when numba is
installed (used by the benchmark and by CI to exercise both implementations).
"""
import os

_disabled = os.environ.get("ORTHOKIT_NO_NUMBA", "").strip().lower() not in ("", "0", "false")

if _disabled:
    HAVE_NUMBA = False
else:
    try:
        import numba  # noqa: F401
        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False

if HAVE_NUMBA:
    from numba import njit
else:
    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
