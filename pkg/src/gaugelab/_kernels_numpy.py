"""Vectorised numpy kernels.

Every azimuthal potential in the catalog has the form ``A = f * (-y, x, 0)``
with a scalar factor ``f(rho, z)``; the kernels only ever compute that factor.
Term codes are shared with the numba kernels.
"""
import numpy as np

DIRAC_I, DIRAC_II, KAPPA, AB_SOLENOID, SOLENOID_KAPPA = range(5)


def potential_factor(pts, codes, p1, p2):
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    rho2 = x * x + y * y
    f = np.zeros(pts.shape[0])
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.sqrt(rho2 + z * z)
        for code, a, b in zip(codes, p1, p2):
            if code == DIRAC_I:
                # g(1 - cos t)/(r sin t); pick the form without cancellation
                f += np.where(z >= 0.0, a / (r * (r + z)), a * (r - z) / (r * rho2))
            elif code == DIRAC_II:
                f -= np.where(z <= 0.0, a / (r * (r - z)), a * (r + z) / (r * rho2))
            elif code == KAPPA:
                f += a / rho2
            elif code == AB_SOLENOID:
                inside = rho2 < b * b
                f += np.where(inside, 0.5 * a, 0.5 * a * b * b / rho2)
            elif code == SOLENOID_KAPPA:
                f += np.where(rho2 > b * b, a / rho2, 0.0)
            else:
                raise ValueError(f"unknown term code {code}")
    return f


def potential_vectors(pts, codes, p1, p2):
    f = potential_factor(pts, codes, p1, p2)
    out = np.zeros_like(pts, dtype=float)
    out[:, 0] = -f * pts[:, 1]
    out[:, 1] = f * pts[:, 0]
    return out


def circulation_integrand(pts, tans, codes, p1, p2):
    f = potential_factor(pts, codes, p1, p2)
    return f * (pts[:, 0] * tans[:, 1] - pts[:, 1] * tans[:, 0])


def azimuth_steps(x, y):
    phi = np.arctan2(y, x)
    d = np.diff(phi)
    return d - 2.0 * np.pi * np.floor(d / (2.0 * np.pi) + 0.5)
