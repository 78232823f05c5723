"""Coordinates, parametric paths and surfaces, validity patches, z-axis winding.

Orientation convention: the azimuthal unit vector points counterclockwise when
viewed from +z, so a counterclockwise loop around the z-axis has winding +1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from . import kernels
from .errors import NotClosed, PathTouchesAxis

#: Points closer than this to an excluded set count as excluded.
EPS_AXIS = 1e-9

TWO_PI = 2.0 * math.pi


class Point3(NamedTuple):
    x: float
    y: float
    z: float


def as_points(p) -> np.ndarray:
    """Coerce a point or an (n, 3) stack of points to a float array."""
    a = np.asarray(p, dtype=float)
    if a.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {a.shape}")
    return a


def to_cylindrical(p):
    """Return ``(rho, phi, z)`` with ``phi`` in ``[0, 2*pi)``; ``phi = 0`` on the axis."""
    x, y, z = (float(c) for c in as_points(p))
    rho = math.hypot(x, y)
    if rho == 0.0:
        return 0.0, 0.0, z
    phi = math.atan2(y, x)
    if phi < 0.0:
        phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
    return rho, phi, z


def from_cylindrical(rho, phi, z) -> Point3:
    return Point3(rho * math.cos(phi), rho * math.sin(phi), float(z))


def from_spherical(r, theta, phi) -> Point3:
    """Cartesian point from radius, polar angle and azimuth."""
    st = math.sin(theta)
    return Point3(r * st * math.cos(phi), r * st * math.sin(phi), r * math.cos(theta))


def phi_hat(p) -> np.ndarray:
    x, y, _ = as_points(p)
    rho = math.hypot(x, y)
    if rho == 0.0:
        raise ValueError("azimuthal direction undefined on the z-axis")
    return np.array([-y / rho, x / rho, 0.0])


def r_hat(p) -> np.ndarray:
    a = as_points(p)
    return a / np.linalg.norm(a)


# ---------------------------------------------------------------------------
# patches


class Excluded(enum.Enum):
    Z_AXIS = "z_axis"
    NEG_Z_HALF_AXIS = "neg_z_half_axis"
    POS_Z_HALF_AXIS = "pos_z_half_axis"
    CYLINDER_SHELL = "cylinder_shell"


@dataclass(frozen=True)
class Exclusion:
    kind: Excluded
    radius: Optional[float] = None

    def __post_init__(self):
        if self.kind is Excluded.CYLINDER_SHELL:
            if self.radius is None or not self.radius > 0:
                raise ValueError("cylinder shell needs a radius > 0")
        elif self.radius is not None:
            raise ValueError(f"{self.kind.name} takes no radius")

    def distance(self, pts: np.ndarray) -> np.ndarray:
        x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
        rho = np.hypot(x, y)
        if self.kind is Excluded.Z_AXIS:
            return rho
        if self.kind is Excluded.CYLINDER_SHELL:
            return np.abs(rho - self.radius)
        r = np.sqrt(rho * rho + z * z)
        # the half-axes include the origin
        if self.kind is Excluded.NEG_Z_HALF_AXIS:
            return np.where(z <= 0.0, rho, r)
        return np.where(z >= 0.0, rho, r)

    def __str__(self):
        if self.kind is Excluded.CYLINDER_SHELL:
            return f"CYLINDER_SHELL(R={self.radius:g})"
        return self.kind.name


@dataclass(frozen=True)
class PatchSpec:
    """Open domain of a potential, described by the singular sets it omits.

    An empty ``excluded`` tuple is the whole space (NONE). Intersecting two
    patches takes the union of their excluded sets.
    """

    excluded: tuple = ()

    @classmethod
    def none(cls):
        return cls(())

    @classmethod
    def z_axis(cls):
        return cls((Exclusion(Excluded.Z_AXIS),))

    @classmethod
    def neg_z_half_axis(cls):
        return cls((Exclusion(Excluded.NEG_Z_HALF_AXIS),))

    @classmethod
    def pos_z_half_axis(cls):
        return cls((Exclusion(Excluded.POS_Z_HALF_AXIS),))

    @classmethod
    def cylinder_shell(cls, radius):
        return cls((Exclusion(Excluded.CYLINDER_SHELL, float(radius)),))

    def intersect(self, other: "PatchSpec") -> "PatchSpec":
        merged = list(self.excluded)
        for ex in other.excluded:
            if ex not in merged:
                merged.append(ex)
        return PatchSpec(tuple(merged))

    def distance(self, pts) -> np.ndarray:
        """Distance from each point to the excluded set (inf for NONE)."""
        pts = as_points(pts)
        d = np.full(pts.shape[:-1], np.inf)
        for ex in self.excluded:
            d = np.minimum(d, ex.distance(pts))
        return d

    def contains(self, p) -> bool:
        return bool(self.distance(p) > EPS_AXIS)

    def contains_all(self, pts) -> bool:
        return bool(np.all(self.distance(pts) > EPS_AXIS))

    def __str__(self):
        if not self.excluded:
            return "PatchSpec(NONE)"
        return "PatchSpec(" + " | ".join(str(e) for e in self.excluded) + ")"


# ---------------------------------------------------------------------------
# paths

PathFn = Callable[[np.ndarray], np.ndarray]


def _fd_tangent(func: PathFn, t: np.ndarray, h: float = 1e-4) -> np.ndarray:
    # fourth-order stencils: central inside, one-sided within 2h of an end
    t = np.asarray(t, dtype=float)
    out = np.empty((t.size, 3))
    lo = t < 2 * h
    hi = t > 1 - 2 * h
    mid = ~(lo | hi)
    if mid.any():
        c = t[mid]
        out[mid] = (8 * (func(c + h) - func(c - h)) - (func(c + 2 * h) - func(c - 2 * h))) / (12 * h)
    for mask, sgn in ((lo, 1.0), (hi, -1.0)):
        if mask.any():
            c = t[mask]
            f = [func(c + sgn * k * h) for k in range(5)]
            out[mask] = sgn * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    return out


@dataclass(frozen=True)
class ParamPath:
    """A curve ``t in [0, 1] -> R^3``.

    ``func`` and ``tangent`` are vectorised over a 1-D array of parameters and
    return ``(n, 3)`` arrays. ``breaks`` lists interior parameters where the
    curve is not smooth; quadrature never straddles them.
    """

    func: PathFn
    closed: bool = False
    samples_hint: int = 256
    tangent: Optional[PathFn] = None
    breaks: tuple = ()
    label: str = "custom"

    def __post_init__(self):
        if self.samples_hint < 1:
            raise ValueError("samples_hint must be positive")
        if self.closed and self.endpoint_gap() >= 1e-12 * max(1.0, self.scale()):
            raise NotClosed(f"path {self.label!r} is flagged closed but its ends differ")

    def points(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.asarray(self.func(t), dtype=float).reshape(t.size, 3)

    def point(self, t: float) -> np.ndarray:
        return self.points([t])[0]

    def tangents(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.tangent is not None:
            return np.asarray(self.tangent(t), dtype=float).reshape(t.size, 3)
        return _fd_tangent(self.points, t)

    def endpoint_gap(self) -> float:
        ends = self.points([0.0, 1.0])
        return float(np.linalg.norm(ends[1] - ends[0]))

    def scale(self) -> float:
        return float(np.max(np.abs(self.points(np.linspace(0, 1, 17)))))

    def pieces(self):
        """Parameter intervals between consecutive breaks."""
        knots = [0.0, *sorted(b for b in self.breaks if 0.0 < b < 1.0), 1.0]
        return list(zip(knots[:-1], knots[1:]))

    def sample(self, n: int) -> np.ndarray:
        return self.points(np.linspace(0.0, 1.0, n))

    def reversed(self) -> "ParamPath":
        f, tan = self.points, self.tangents
        return ParamPath(
            lambda t: f(1.0 - t),
            closed=self.closed,
            samples_hint=self.samples_hint,
            tangent=lambda t: -tan(1.0 - t),
            breaks=tuple(sorted(1.0 - b for b in self.breaks)),
            label=f"reversed({self.label})",
        )

    def then(self, other: "ParamPath") -> "ParamPath":
        """Traverse ``self`` on ``[0, 1/2]`` and ``other`` on ``[1/2, 1]``."""
        gap = np.linalg.norm(self.point(1.0) - other.point(0.0))
        if gap > 1e-12 * max(1.0, self.scale(), other.scale()):
            raise ValueError("paths do not join: end of first != start of second")
        f1, f2, t1, t2 = self.points, other.points, self.tangents, other.tangents

        def func(t):
            out = np.empty((t.size, 3))
            lo = t <= 0.5
            out[lo] = f1(2 * t[lo])
            out[~lo] = f2(2 * t[~lo] - 1)
            return out

        def tangent(t):
            out = np.empty((t.size, 3))
            lo = t <= 0.5
            out[lo] = 2 * t1(2 * t[lo])
            out[~lo] = 2 * t2(2 * t[~lo] - 1)
            return out

        breaks = (
            [0.5 * b for b in self.breaks] + [0.5] + [0.5 + 0.5 * b for b in other.breaks]
        )
        joined_gap = np.linalg.norm(self.point(0.0) - other.point(1.0))
        closed = bool(joined_gap < 1e-12 * max(1.0, self.scale(), other.scale()))
        return ParamPath(
            func,
            closed=closed,
            samples_hint=self.samples_hint + other.samples_hint,
            tangent=tangent,
            breaks=tuple(breaks),
            label=f"{self.label}+{other.label}",
        )

    def reparametrized(self, s: Callable, ds: Callable) -> "ParamPath":
        """Compose with a monotone map ``s: [0,1] -> [0,1]`` with derivative ``ds``."""
        f, tan = self.points, self.tangents
        return ParamPath(
            lambda t: f(s(t)),
            closed=self.closed,
            samples_hint=self.samples_hint,
            tangent=lambda t: tan(s(t)) * ds(t)[:, None],
            breaks=(),
            label=f"reparam({self.label})",
        )


def _plane_basis(normal):
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    if abs(n[2]) > 1.0 - 1e-15:
        e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.cross(n, e1)
        return e1, e2 / np.linalg.norm(e2), n
    e1 = np.cross([0.0, 0.0, 1.0], n)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return e1, e2, n


def circle(radius=1.0, center=(0.0, 0.0, 0.0), turns=1, normal=(0.0, 0.0, 1.0), phase=0.0):
    """Circle traversed ``turns`` times counterclockwise about ``normal``.

    Negative ``turns`` runs clockwise.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    c = np.asarray(center, dtype=float)
    e1, e2, _ = _plane_basis(normal)
    w = TWO_PI * turns

    def func(t):
        a = w * t + phase
        return c + radius * (np.cos(a)[:, None] * e1 + np.sin(a)[:, None] * e2)

    def tangent(t):
        a = w * t + phase
        return radius * w * (-np.sin(a)[:, None] * e1 + np.cos(a)[:, None] * e2)

    closed = float(turns).is_integer()
    return ParamPath(
        func,
        closed=closed,
        samples_hint=max(64, 64 * abs(int(math.ceil(abs(turns))))),
        tangent=tangent,
        label=f"circle(r={radius:g}, turns={turns:g})",
    )


def unit_circle():
    return circle(1.0)


def segment(start, end):
    a = np.asarray(start, dtype=float)
    b = np.asarray(end, dtype=float)
    d = b - a
    return ParamPath(
        lambda t: a + t[:, None] * d,
        closed=False,
        samples_hint=2,
        tangent=lambda t: np.broadcast_to(d, (t.size, 3)).copy(),
        label="segment",
    )


def polyline(points, closed=False):
    """Piecewise-linear path with equal parameter time per edge."""
    v = np.asarray(points, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3 or len(v) < 2:
        raise ValueError("polyline needs at least two 3-D vertices")
    if closed and np.linalg.norm(v[0] - v[-1]) > 0:
        v = np.vstack([v, v[:1]])
    m = len(v) - 1
    edges = np.diff(v, axis=0)

    def idx(t):
        return np.minimum((t * m).astype(int), m - 1)

    def func(t):
        i = idx(t)
        return v[i] + (t * m - i)[:, None] * edges[i]

    def tangent(t):
        return m * edges[idx(t)]

    return ParamPath(
        func,
        closed=bool(closed or np.linalg.norm(v[0] - v[-1]) == 0.0),
        samples_hint=max(4 * m, 16),
        tangent=tangent,
        breaks=tuple(k / m for k in range(1, m)),
        label=f"polyline({m} edges)",
    )


def semicircle(start, end, side=1, height=None):
    """Half-ellipse in the plane z = const from ``start`` to ``end``.

    ``side=+1`` bulges to the left of the direction of travel (viewed from
    +z); ``height`` defaults to half the chord, giving a true semicircle.
    """
    s = np.asarray(start, dtype=float)
    e = np.asarray(end, dtype=float)
    mid = 0.5 * (s + e)
    chord = e - s
    a = 0.5 * np.linalg.norm(chord)
    if a == 0.0:
        raise ValueError("semicircle endpoints coincide")
    u = chord / (2 * a)
    n = np.cross([0.0, 0.0, 1.0], u)
    if np.linalg.norm(n) < 1e-12:
        raise ValueError("semicircle chord must not be parallel to z")
    n = n / np.linalg.norm(n)
    h = a if height is None else float(height)
    sgn = 1.0 if side >= 0 else -1.0

    def func(t):
        ang = math.pi * t
        return mid - a * np.cos(ang)[:, None] * u + sgn * h * np.sin(ang)[:, None] * n

    def tangent(t):
        ang = math.pi * t
        return math.pi * (a * np.sin(ang)[:, None] * u + sgn * h * np.cos(ang)[:, None] * n)

    return ParamPath(func, closed=False, samples_hint=128, tangent=tangent, label="semicircle")


# ---------------------------------------------------------------------------
# surfaces

SurfFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ParamSurface:
    """A patch ``(u, v) in [0, 1]^2 -> R^3`` oriented by ``d/du x d/dv``.

    ``func``, ``du`` and ``dv`` accept broadcastable arrays ``u``, ``v`` and
    return ``(..., 3)``. ``boundary`` is ``None`` for closed surfaces.
    """

    func: SurfFn
    boundary: Optional[ParamPath] = None
    du: Optional[SurfFn] = None
    dv: Optional[SurfFn] = None
    u_breaks: tuple = ()
    v_breaks: tuple = ()
    label: str = "custom"

    def points(self, u, v) -> np.ndarray:
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        return np.asarray(self.func(u, v), dtype=float)

    def partials(self, u, v, h=1e-5):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        if self.du is not None and self.dv is not None:
            return np.asarray(self.du(u, v), float), np.asarray(self.dv(u, v), float)
        uc = np.clip(u, h, 1 - h)
        vc = np.clip(v, h, 1 - h)
        pu = (self.func(uc + h, v) - self.func(uc - h, v)) / (2 * h)
        pv = (self.func(u, vc + h) - self.func(u, vc - h)) / (2 * h)
        return pu, pv

    def normals(self, u, v) -> np.ndarray:
        """Unnormalised normal ``d/du x d/dv`` (the area element)."""
        pu, pv = self.partials(u, v)
        return np.cross(pu, pv)

    def pieces(self):
        def cut(breaks):
            k = [0.0, *sorted(b for b in breaks if 0.0 < b < 1.0), 1.0]
            return list(zip(k[:-1], k[1:]))

        return cut(self.u_breaks), cut(self.v_breaks)


def disk(radius=1.0, center=(0.0, 0.0, 0.0), normal=(0.0, 0.0, 1.0), split_radii: Sequence[float] = ()):
    """Flat disk, ``u`` radial and ``v`` angular; boundary runs counterclockwise about ``normal``.

    ``split_radii`` adds radial breaks at those cylinder radii; this only makes
    sense for a disk centred on the z-axis and normal to it.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    c = np.asarray(center, dtype=float)
    e1, e2, n = _plane_basis(normal)
    breaks = []
    if split_radii:
        coaxial = math.hypot(c[0], c[1]) < EPS_AXIS and abs(abs(n[2]) - 1.0) < 1e-12
        if not coaxial:
            raise ValueError("split_radii requires a disk centred on and normal to the z-axis")
        breaks = [float(s) / radius for s in split_radii if 0.0 < s < radius]

    def func(u, v):
        a = TWO_PI * v
        return c + radius * u[..., None] * (np.cos(a)[..., None] * e1 + np.sin(a)[..., None] * e2)

    def du(u, v):
        a = TWO_PI * v
        return radius * (np.cos(a)[..., None] * e1 + np.sin(a)[..., None] * e2) + 0.0 * u[..., None]

    def dv(u, v):
        a = TWO_PI * v
        return radius * TWO_PI * u[..., None] * (-np.sin(a)[..., None] * e1 + np.cos(a)[..., None] * e2)

    return ParamSurface(
        func,
        boundary=circle(radius, c, 1, n),
        du=du,
        dv=dv,
        u_breaks=tuple(breaks),
        label=f"disk(r={radius:g})",
    )


def sphere(radius=1.0, center=(0.0, 0.0, 0.0)):
    """Sphere with outward orientation; ``u`` polar, ``v`` azimuthal."""
    c = np.asarray(center, dtype=float)

    def func(u, v):
        th, ph = math.pi * u, TWO_PI * v
        return c + radius * np.stack(
            [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1
        )

    def du(u, v):
        th, ph = math.pi * u, TWO_PI * v
        return radius * math.pi * np.stack(
            [np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)], axis=-1
        )

    def dv(u, v):
        th, ph = math.pi * u, TWO_PI * v
        return radius * TWO_PI * np.stack(
            [-np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), 0.0 * th], axis=-1
        )

    return ParamSurface(func, boundary=None, du=du, dv=dv, label=f"sphere(r={radius:g})")


def rectangle(origin, edge_u, edge_v):
    """Parallelogram ``origin + u*edge_u + v*edge_v`` with its perimeter as boundary."""
    o = np.asarray(origin, dtype=float)
    a = np.asarray(edge_u, dtype=float)
    b = np.asarray(edge_v, dtype=float)
    corners = [o, o + a, o + a + b, o + b]
    return ParamSurface(
        lambda u, v: o + u[..., None] * a + v[..., None] * b,
        boundary=polyline(corners, closed=True),
        du=lambda u, v: np.broadcast_to(a, u.shape + (3,)),
        dv=lambda u, v: np.broadcast_to(b, u.shape + (3,)),
        label="rectangle",
    )


# ---------------------------------------------------------------------------
# sampling-based queries


def _refined_azimuth_steps(path: ParamPath, n: int, max_rounds: int = 60):
    t = np.union1d(np.linspace(0.0, 1.0, n), np.array(path.breaks, dtype=float))
    for _ in range(max_rounds):
        pts = path.points(t)
        rho = np.hypot(pts[:, 0], pts[:, 1])
        if rho.min() <= EPS_AXIS:
            i = int(np.argmin(rho))
            raise PathTouchesAxis(f"path passes within {EPS_AXIS:g} of the z-axis at {pts[i]}")
        steps = kernels.azimuth_steps(pts[:, 0], pts[:, 1])
        bad = np.abs(steps) >= 0.5 * math.pi
        if not bad.any():
            return steps
        mids = 0.5 * (t[:-1][bad] + t[1:][bad])
        t = np.sort(np.concatenate([t, mids]))
    raise PathTouchesAxis("azimuth increments did not resolve; path grazes the z-axis")


def winding_total(path: ParamPath) -> float:
    """Accumulated azimuth of the path divided by 2*pi (not rounded)."""
    steps = _refined_azimuth_steps(path, max(path.samples_hint, 64))
    return float(np.sum(steps)) / TWO_PI


def winding_number(path: ParamPath) -> int:
    """Signed number of turns of a closed path about the z-axis."""
    if path.endpoint_gap() >= 1e-12 * max(1.0, path.scale()):
        raise NotClosed("winding number needs a closed path")
    total = winding_total(path)
    w = int(round(total))
    if abs(total - w) >= 1e-6:
        raise PathTouchesAxis(f"winding defect {abs(total - w):.3g}; path resolution failed")
    return w


def _segment_axis_distance(p0, p1):
    """Distance in the xy-plane from the origin to each chord, and where it occurs."""
    d = p1[:, :2] - p0[:, :2]
    dd = np.einsum("ij,ij->i", d, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(dd > 0, -np.einsum("ij,ij->i", p0[:, :2], d) / dd, 0.0)
    s = np.clip(s, 0.0, 1.0)
    closest = p0 + s[:, None] * (p1 - p0)
    return np.hypot(closest[:, 0], closest[:, 1]), closest


def _chords_hit(ex: Exclusion, p0, p1) -> bool:
    if ex.kind is Excluded.CYLINDER_SHELL:
        r0 = np.hypot(p0[:, 0], p0[:, 1]) - ex.radius
        r1 = np.hypot(p1[:, 0], p1[:, 1]) - ex.radius
        return bool(np.any(r0 * r1 < 0.0))
    dist, closest = _segment_axis_distance(p0, p1)
    near = dist <= EPS_AXIS
    if ex.kind is Excluded.Z_AXIS:
        return bool(near.any())
    z = closest[:, 2]
    on_side = z <= 0.0 if ex.kind is Excluded.NEG_Z_HALF_AXIS else z >= 0.0
    return bool(np.any(near & on_side))


def path_in_patch(path: ParamPath, patch: PatchSpec, rel_step: float = 1e-4) -> bool:
    """True when the sampled path never enters the excluded set.

    Sampling starts uniform and is refined adaptively: any chord whose ends
    lie within twice its length of the excluded set is bisected until it is
    at most ``rel_step`` of the total length. Chords are also tested for
    crossing the excluded set between samples.
    """
    if not patch.excluded:
        return True
    t = np.union1d(np.linspace(0.0, 1.0, max(path.samples_hint, 1024)), np.array(path.breaks, dtype=float))
    for _ in range(64):
        pts = path.points(t)
        d = patch.distance(pts)
        if np.any(d <= EPS_AXIS):
            return False
        chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        length = chords.sum()
        if length == 0.0:
            break
        risky = (np.minimum(d[:-1], d[1:]) <= 2.0 * chords) & (chords > rel_step * length)
        if not risky.any():
            break
        t = np.sort(np.concatenate([t, 0.5 * (t[:-1][risky] + t[1:][risky])]))
    return not any(_chords_hit(ex, pts[:-1], pts[1:]) for ex in patch.excluded)
