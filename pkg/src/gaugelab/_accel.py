"""Backend selection for the numeric kernels.

``GHL_NUMBA=0`` forces the pure-numpy path even when numba is importable.
``GHL_THREADS`` caps the number of threads the numba kernels may use.
"""
import os

_FALSEY = {"0", "false", "no", "off"}


def _numba_requested():
    return os.environ.get("GHL_NUMBA", "1").strip().lower() not in _FALSEY


try:
    import numba

    HAVE_NUMBA = True
    # the bundled TBB is too old for numba; workqueue is always available
    if not numba.config.THREADING_LAYER or numba.config.THREADING_LAYER == "default":
        numba.config.THREADING_LAYER = "workqueue"
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


def thread_cap():
    raw = os.environ.get("GHL_THREADS")
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        return None
    return n if n > 0 else None


def apply_thread_cap():
    """Clamp numba's thread pool to ``GHL_THREADS`` if it is set."""
    if not USE_NUMBA:
        return
    cap = thread_cap()
    if cap is not None:
        numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))
