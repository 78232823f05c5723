"""Kernel dispatch: numba when available and not disabled, numpy otherwise."""
import numpy as np

from . import _accel
from . import _kernels_numpy

if _accel.USE_NUMBA:
    from . import _kernels_numba as _impl

    _accel.apply_thread_cap()
    BACKEND = "numba"
else:
    _impl = _kernels_numpy
    BACKEND = "numpy"

from ._kernels_numpy import (  # noqa: E402
    AB_SOLENOID,
    DIRAC_I,
    DIRAC_II,
    KAPPA,
    SOLENOID_KAPPA,
)


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def potential_vectors(pts, codes, p1, p2):
    return _impl.potential_vectors(
        _f64(pts), np.asarray(codes, dtype=np.int64), _f64(p1), _f64(p2)
    )


def circulation_integrand(pts, tans, codes, p1, p2):
    return _impl.circulation_integrand(
        _f64(pts), _f64(tans), np.asarray(codes, dtype=np.int64), _f64(p1), _f64(p2)
    )


def azimuth_steps(x, y):
    # numpy's vectorized atan2 beats numba's scalar one, so this stays numpy on both backends
    return _kernels_numpy.azimuth_steps(_f64(x), _f64(y))
