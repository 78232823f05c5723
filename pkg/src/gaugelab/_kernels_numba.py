"""numba versions of the kernels in ``_kernels_numpy``.

Per-point work runs under ``prange``; nothing is reduced inside the parallel
loop, so results do not depend on the thread count.
"""
import math

import numpy as np
from numba import njit, prange

from ._kernels_numpy import AB_SOLENOID, DIRAC_I, DIRAC_II, KAPPA, SOLENOID_KAPPA


@njit(cache=True, inline="always")
def _factor_at(x, y, z, codes, p1, p2):
    rho2 = x * x + y * y
    r = math.sqrt(rho2 + z * z)
    f = 0.0
    for k in range(codes.shape[0]):
        c = codes[k]
        a = p1[k]
        b = p2[k]
        if c == DIRAC_I:
            if z >= 0.0:
                f += a / (r * (r + z))
            else:
                f += a * (r - z) / (r * rho2)
        elif c == DIRAC_II:
            if z <= 0.0:
                f -= a / (r * (r - z))
            else:
                f -= a * (r + z) / (r * rho2)
        elif c == KAPPA:
            f += a / rho2
        elif c == AB_SOLENOID:
            if rho2 < b * b:
                f += 0.5 * a
            else:
                f += 0.5 * a * b * b / rho2
        elif c == SOLENOID_KAPPA:
            if rho2 > b * b:
                f += a / rho2
    return f


@njit(cache=True, parallel=True)
def potential_factor(pts, codes, p1, p2):
    n = pts.shape[0]
    out = np.empty(n)
    for i in prange(n):
        out[i] = _factor_at(pts[i, 0], pts[i, 1], pts[i, 2], codes, p1, p2)
    return out


@njit(cache=True, parallel=True)
def potential_vectors(pts, codes, p1, p2):
    n = pts.shape[0]
    out = np.zeros((n, 3))
    for i in prange(n):
        f = _factor_at(pts[i, 0], pts[i, 1], pts[i, 2], codes, p1, p2)
        out[i, 0] = -f * pts[i, 1]
        out[i, 1] = f * pts[i, 0]
    return out


@njit(cache=True, parallel=True)
def circulation_integrand(pts, tans, codes, p1, p2):
    n = pts.shape[0]
    out = np.empty(n)
    for i in prange(n):
        x = pts[i, 0]
        y = pts[i, 1]
        f = _factor_at(x, y, pts[i, 2], codes, p1, p2)
        out[i] = f * (x * tans[i, 1] - y * tans[i, 0])
    return out
