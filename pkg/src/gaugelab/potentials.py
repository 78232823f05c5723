"""Catalog of singular vector potentials and the fields they describe.

All potentials here are purely azimuthal. Values are returned in Cartesian
components so downstream quadrature works in a single basis.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import OnSolenoidShell, OutsideDomain
from .geometry import EPS_AXIS, PatchSpec, Point3, as_points


class PotentialKind(enum.Enum):
    DIRAC_STRING_I = "dirac_i"
    DIRAC_STRING_II = "dirac_ii"
    PURE_GAUGE_KAPPA = "kappa"
    AB_SOLENOID = "ab_solenoid"
    SOLENOID_KAPPA = "solenoid_kappa"
    SUPERPOSITION = "superposition"


_ALIASES = {
    "dirac_i": PotentialKind.DIRAC_STRING_I,
    "dirac_string_i": PotentialKind.DIRAC_STRING_I,
    "string_i": PotentialKind.DIRAC_STRING_I,
    "dirac_ii": PotentialKind.DIRAC_STRING_II,
    "dirac_string_ii": PotentialKind.DIRAC_STRING_II,
    "string_ii": PotentialKind.DIRAC_STRING_II,
    "kappa": PotentialKind.PURE_GAUGE_KAPPA,
    "pure_gauge_kappa": PotentialKind.PURE_GAUGE_KAPPA,
    "ab_solenoid": PotentialKind.AB_SOLENOID,
    "ab": PotentialKind.AB_SOLENOID,
    "solenoid": PotentialKind.AB_SOLENOID,
    "solenoid_kappa": PotentialKind.SOLENOID_KAPPA,
    "superposition": PotentialKind.SUPERPOSITION,
    "sum": PotentialKind.SUPERPOSITION,
}

# parameters each kind takes, in descriptor order
_PARAMS = {
    PotentialKind.DIRAC_STRING_I: ("g",),
    PotentialKind.DIRAC_STRING_II: ("g",),
    PotentialKind.PURE_GAUGE_KAPPA: ("kappa",),
    PotentialKind.AB_SOLENOID: ("B", "R"),
    PotentialKind.SOLENOID_KAPPA: ("kappa", "R"),
    PotentialKind.SUPERPOSITION: ("members",),
}

_CODES = {
    PotentialKind.DIRAC_STRING_I: kernels.DIRAC_I,
    PotentialKind.DIRAC_STRING_II: kernels.DIRAC_II,
    PotentialKind.PURE_GAUGE_KAPPA: kernels.KAPPA,
    PotentialKind.AB_SOLENOID: kernels.AB_SOLENOID,
    PotentialKind.SOLENOID_KAPPA: kernels.SOLENOID_KAPPA,
}


@dataclass(frozen=True)
class PotentialSpec:
    kind: PotentialKind
    g: float | None = None
    kappa: float | None = None
    B: float | None = None
    R: float | None = None
    members: tuple = ()

    def __post_init__(self):
        need = _PARAMS[self.kind]
        for name in ("g", "kappa", "B", "R"):
            val = getattr(self, name)
            if name in need:
                if val is None or not math.isfinite(val):
                    raise ValueError(f"{self.kind.name} needs a finite {name}")
                object.__setattr__(self, name, float(val))
            elif val is not None:
                raise ValueError(f"{self.kind.name} takes no parameter {name}")
        if "R" in need and not self.R > 0:
            raise ValueError("solenoid radius R must be positive")
        if self.kind is PotentialKind.SUPERPOSITION:
            object.__setattr__(self, "members", tuple(self.members))
            if not all(isinstance(m, PotentialSpec) for m in self.members):
                raise TypeError("superposition members must be PotentialSpec")
        elif self.members:
            raise ValueError(f"{self.kind.name} takes no members")

    # constructors -----------------------------------------------------------

    @classmethod
    def dirac_string_i(cls, g):
        return cls(PotentialKind.DIRAC_STRING_I, g=g)

    @classmethod
    def dirac_string_ii(cls, g):
        return cls(PotentialKind.DIRAC_STRING_II, g=g)

    @classmethod
    def pure_gauge_kappa(cls, kappa):
        return cls(PotentialKind.PURE_GAUGE_KAPPA, kappa=kappa)

    @classmethod
    def ab_solenoid(cls, B, R):
        return cls(PotentialKind.AB_SOLENOID, B=B, R=R)

    @classmethod
    def solenoid_kappa(cls, kappa, R):
        return cls(PotentialKind.SOLENOID_KAPPA, kappa=kappa, R=R)

    @classmethod
    def superposition(cls, *members):
        return cls(PotentialKind.SUPERPOSITION, members=tuple(members))

    def __add__(self, other):
        if not isinstance(other, PotentialSpec):
            return NotImplemented
        return PotentialSpec.superposition(self, other)

    # domain -----------------------------------------------------------------

    @property
    def patch(self) -> PatchSpec:
        k = self.kind
        if k is PotentialKind.DIRAC_STRING_I:
            return PatchSpec.neg_z_half_axis()
        if k is PotentialKind.DIRAC_STRING_II:
            return PatchSpec.pos_z_half_axis()
        if k is PotentialKind.PURE_GAUGE_KAPPA:
            return PatchSpec.z_axis()
        if k in (PotentialKind.AB_SOLENOID, PotentialKind.SOLENOID_KAPPA):
            return PatchSpec.cylinder_shell(self.R)
        patch = PatchSpec.none()
        for m in self.members:
            patch = patch.intersect(m.patch)
        return patch

    def terms(self):
        """Flattened ``(codes, p1, p2)`` arrays consumed by the kernels."""
        flat = []
        self._collect(flat)
        codes = np.array([c for c, _, _ in flat], dtype=np.int64)
        p1 = np.array([a for _, a, _ in flat], dtype=float)
        p2 = np.array([b for _, _, b in flat], dtype=float)
        return codes, p1, p2

    def _collect(self, out):
        k = self.kind
        if k is PotentialKind.SUPERPOSITION:
            for m in self.members:
                m._collect(out)
        elif k in (PotentialKind.DIRAC_STRING_I, PotentialKind.DIRAC_STRING_II):
            out.append((_CODES[k], self.g, 0.0))
        elif k is PotentialKind.PURE_GAUGE_KAPPA:
            out.append((_CODES[k], self.kappa, 0.0))
        elif k is PotentialKind.AB_SOLENOID:
            out.append((_CODES[k], self.B, self.R))
        else:
            out.append((_CODES[k], self.kappa, self.R))

    # serialisation ----------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value}
        if self.kind is PotentialKind.SUPERPOSITION:
            d["members"] = [m.to_dict() for m in self.members]
        else:
            for name in _PARAMS[self.kind]:
                d[name] = getattr(self, name)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PotentialSpec":
        if not isinstance(d, dict) or "kind" not in d:
            raise ValueError("potential descriptor must be an object with a 'kind'")
        try:
            kind = _ALIASES[str(d["kind"]).lower()]
        except KeyError:
            raise ValueError(f"unknown potential kind {d['kind']!r}") from None
        allowed = set(_PARAMS[kind]) | {"kind"}
        extra = set(d) - allowed
        if extra:
            raise ValueError(f"unknown fields for {kind.value}: {sorted(extra)}")
        missing = set(_PARAMS[kind]) - set(d)
        if missing:
            raise ValueError(f"missing fields for {kind.value}: {sorted(missing)}")
        if kind is PotentialKind.SUPERPOSITION:
            return cls.superposition(*(cls.from_dict(m) for m in d["members"]))
        return cls(kind, **{k: float(d[k]) for k in _PARAMS[kind]})


@dataclass(frozen=True)
class FieldSample:
    value: np.ndarray
    location: Point3 = field(default_factory=lambda: Point3(0.0, 0.0, 0.0))

    def __post_init__(self):
        v = np.asarray(self.value, dtype=float)
        if v.shape != (3,) or not np.all(np.isfinite(v)):
            raise ValueError(f"field sample must be a finite 3-vector, got {v}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "location", Point3(*(float(c) for c in self.location)))


def check_in_patch(spec: PotentialSpec, pts: np.ndarray, margin: float = EPS_AXIS):
    patch = spec.patch
    d = patch.distance(pts)
    bad = np.flatnonzero(np.atleast_1d(d) <= margin)
    if bad.size:
        p = np.atleast_2d(pts)[bad[0]]
        raise OutsideDomain(p, patch)


def potential_values(spec: PotentialSpec, pts, check: bool = True) -> np.ndarray:
    """Potential at each row of an ``(n, 3)`` array."""
    pts = np.atleast_2d(as_points(pts))
    if check:
        check_in_patch(spec, pts)
    return kernels.potential_vectors(pts, *spec.terms())


def eval_potential(spec: PotentialSpec, p) -> FieldSample:
    pt = as_points(p)
    return FieldSample(potential_values(spec, pt[None, :])[0], Point3(*pt))


def monopole_field(g: float, pts) -> np.ndarray:
    pts = np.atleast_2d(as_points(pts))
    r = np.linalg.norm(pts, axis=1)
    if np.any(r <= EPS_AXIS):
        raise OutsideDomain(pts[np.argmin(r)], "monopole at origin")
    return g * pts / r[:, None] ** 3


def eval_monopole_field(g: float, p) -> FieldSample:
    """Regular part ``g / r^2`` along the radial direction."""
    pt = as_points(p)
    return FieldSample(monopole_field(g, pt)[0], Point3(*pt))


def solenoid_field(B: float, R: float, pts) -> np.ndarray:
    pts = np.atleast_2d(as_points(pts))
    rho = np.hypot(pts[:, 0], pts[:, 1])
    shell = np.abs(rho - R) <= EPS_AXIS
    if shell.any():
        raise OnSolenoidShell(pts[np.argmax(shell)], R)
    out = np.zeros_like(pts)
    out[:, 2] = np.where(rho < R, B, 0.0)
    return out


def eval_solenoid_field(B: float, R: float, p) -> FieldSample:
    """Uniform ``B`` along z inside radius ``R``, zero outside, undefined on the shell."""
    pt = as_points(p)
    return FieldSample(solenoid_field(B, R, pt)[0], Point3(*pt))


def analytic_curl(spec: PotentialSpec, pts) -> np.ndarray:
    """Curl of ``spec`` on its patch (delta-function parts omitted)."""
    pts = np.atleast_2d(as_points(pts))
    k = spec.kind
    if k is PotentialKind.SUPERPOSITION:
        out = np.zeros_like(pts)
        for m in spec.members:
            out += analytic_curl(m, pts)
        return out
    if k in (PotentialKind.DIRAC_STRING_I, PotentialKind.DIRAC_STRING_II):
        return monopole_field(spec.g, pts)
    if k is PotentialKind.AB_SOLENOID:
        return solenoid_field(spec.B, spec.R, pts)
    return np.zeros_like(pts)
