"""Holonomies, singular gauge transformations and charge quantization.

Natural units throughout: hbar = c = 1 and charges in units of the electron
charge, so the monopole condition reads ``2 q g in Z`` and the azimuthal
gauge condition reads ``q kappa in Z``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .calculus import DEFAULT_CONFIG, QuadratureConfig, line_integral
from .errors import InvalidN, OutsideDomain
from .geometry import EPS_AXIS, PatchSpec, ParamPath, Point3, as_points, unit_circle
from .potentials import FieldSample, PotentialSpec, potential_values

#: Maximum distance from an integer for a product to count as quantized.
INTEGER_TOL = 1e-6
#: ``|h - 1|`` for a phase that is ``INTEGER_TOL`` turns away from trivial.
HOLONOMY_TOL = 2.0 * math.sin(math.pi * INTEGER_TOL)


@dataclass(frozen=True)
class ChargeSpec:
    q: float

    def __post_init__(self):
        if not math.isfinite(self.q):
            raise ValueError("charge must be finite")
        object.__setattr__(self, "q", float(self.q))


def _charge(q) -> float:
    return q.q if isinstance(q, ChargeSpec) else float(q)


@dataclass(frozen=True)
class QuantizationReport:
    product: float
    nearest_integer: int
    defect: float
    satisfied: bool

    @classmethod
    def of(cls, product: float) -> "QuantizationReport":
        n = int(round(product))
        defect = abs(product - n)
        return cls(float(product), n, float(defect), bool(defect < INTEGER_TOL))

    def to_dict(self):
        return {
            "product": self.product,
            "nearest_integer": self.nearest_integer,
            "defect": self.defect,
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class FactorizedReport:
    """Both sides of ``q kappa = n_q n_kappa`` checked separately.

    With the electron fixing ``N``, ``n_q = q N`` and ``n_kappa = kappa / N``
    must each be integers.
    """

    N: int
    n_q: QuantizationReport
    n_kappa: QuantizationReport

    @property
    def satisfied(self) -> bool:
        return self.n_q.satisfied and self.n_kappa.satisfied

    def to_dict(self):
        return {
            "N": self.N,
            "n_q": self.n_q.to_dict(),
            "n_kappa": self.n_kappa.to_dict(),
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class ChargeSpectrum:
    N: int
    n_range: int
    charges: tuple

    def values(self) -> np.ndarray:
        return np.array([float(c) for c in self.charges])

    def to_dict(self):
        return {
            "N": self.N,
            "range": self.n_range,
            "charges": [float(c) for c in self.charges],
            "fractions": [str(c) for c in self.charges],
        }


def holonomy(q, spec: PotentialSpec, loop: ParamPath, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Phase factor ``exp(+i q circulation)`` around a closed loop."""
    if not loop.closed:
        raise ValueError("holonomy needs a closed loop")
    return cmath.exp(1j * _charge(q) * line_integral(spec, loop, cfg))


def string_gauge_difference(g: float, p) -> FieldSample:
    """Difference of the two string potentials on their common patch (off the z-axis)."""
    pt = as_points(p)
    patch = PatchSpec.z_axis()
    if not patch.contains(pt):
        raise OutsideDomain(pt, patch)
    a1 = potential_values(PotentialSpec.dirac_string_i(g), pt[None, :])[0]
    a2 = potential_values(PotentialSpec.dirac_string_ii(g), pt[None, :])[0]
    return FieldSample(a1 - a2, Point3(*pt))


def gauge_difference_expected(g: float, p) -> np.ndarray:
    """Closed form ``2 g / (r sin theta)`` along the azimuthal direction."""
    x, y, _ = as_points(p)
    rho2 = x * x + y * y
    return 2.0 * g / rho2 * np.array([-y, x, 0.0])


def dirac_condition(q, g: float) -> QuantizationReport:
    return QuantizationReport.of(2.0 * _charge(q) * g)


def kappa_condition(q, kappa: float) -> QuantizationReport:
    return QuantizationReport.of(_charge(q) * kappa)


def factorized_kappa_condition(q, kappa: float, N: int) -> FactorizedReport:
    _check_n(N)
    return FactorizedReport(
        int(N), QuantizationReport.of(_charge(q) * N), QuantizationReport.of(kappa / N)
    )


def _check_n(N):
    if int(N) != N or N == 0:
        raise InvalidN(f"N must be a non-zero integer, got {N!r}")


def kappa_spectrum(N: int, n_range: int) -> list:
    """Allowed gauge parameters ``N * n_kappa`` for ``|n_kappa| <= n_range`` (e = 1)."""
    _check_n(N)
    if n_range < 0:
        raise ValueError("range must be non-negative")
    return sorted(int(N) * n for n in range(-n_range, n_range + 1))


def charge_spectrum(N: int, n_range: int) -> ChargeSpectrum:
    """Charges ``n_q / N`` for ``|n_q| <= n_range`` as exact fractions."""
    _check_n(N)
    if n_range < 0:
        raise ValueError("range must be non-negative")
    charges = sorted({Fraction(n, int(N)) for n in range(-n_range, n_range + 1)})
    return ChargeSpectrum(int(N), int(n_range), tuple(charges))


def single_valuedness(q, kappa: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> bool:
    """Is the holonomy of the azimuthal gauge potential trivial around the unit loop?

    The threshold on ``|h - 1|`` corresponds to the integer-defect tolerance of
    :func:`kappa_condition`, so the two tests agree.
    """
    h = holonomy(q, PotentialSpec.pure_gauge_kappa(kappa), unit_circle(), cfg)
    return abs(h - 1.0) < HOLONOMY_TOL
