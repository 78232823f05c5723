"""Line integrals, finite-difference curl, surface flux and the annular Stokes check.

Quadrature is composite 8-point Gauss-Legendre with panel doubling. Panels
never straddle a path's ``breaks`` or a surface's ``u_breaks``/``v_breaks``,
which is how discontinuities such as the solenoid shell are handled.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import ndimage, optimize

from . import kernels
from .errors import (
    DomainError,
    FieldSingularOnSurface,
    MultipleInterceptions,
    NoConvergence,
    OutsideDomain,
)
from .geometry import (
    EPS_AXIS,
    TWO_PI,
    Excluded,
    ParamPath,
    ParamSurface,
    as_points,
    path_in_patch,
    winding_number,
)
from .potentials import FieldSample, PotentialSpec, Point3, potential_values

GL_ORDER = 8
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)
_EPS = np.finfo(float).eps
# largest number of quadrature nodes evaluated in one vectorised call
_CHUNK = 1 << 18

INNER_RADII = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    max_refinements: int = 24
    base_panels: int = 64

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.base_panels < 4:
            raise ValueError("base_panels must be at least 4")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be at least 1")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    value: float
    panels_used: int
    est_error: float
    history: tuple = ()

    def to_dict(self):
        return {"value": self.value, "panels_used": self.panels_used, "est_error": self.est_error}


def gauss_legendre_nodes(a: float, b: float, panels: int):
    """Nodes and weights of the composite rule on ``[a, b]``."""
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return t, w


def _refine(estimate: Callable[[int], tuple], cfg: QuadratureConfig, what: str) -> QuadResult:
    """Double panels until successive estimates agree.

    ``estimate(n)`` returns ``(value, abs_mass, panels)`` where ``abs_mass``
    is the quadrature of ``|integrand|``; it sets the rounding-noise floor.
    """
    n = cfg.base_panels
    prev, _, _ = estimate(n)
    history = [prev]
    for _ in range(cfg.max_refinements):
        n *= 2
        cur, mass, panels = estimate(n)
        history.append(cur)
        diff = abs(cur - prev)
        tol = max(cfg.rel_tol * abs(cur), 1e-14, 100.0 * _EPS * mass)
        if diff < tol:
            return QuadResult(float(cur), int(panels), float(diff), tuple(history))
        prev = cur
    raise NoConvergence(
        f"{what} did not converge after {cfg.max_refinements} refinements",
        estimate=float(prev),
        est_error=float(diff),
    )


def _integrate_path(integrand, path: ParamPath, cfg: QuadratureConfig, what: str) -> QuadResult:
    pieces = path.pieces()

    def estimate(n):
        total = 0.0
        mass = 0.0
        for a, b in pieces:
            # whole panels per chunk keeps the summation order fixed
            per = max(1, _CHUNK // GL_ORDER)
            for start in range(0, n, per):
                stop = min(n, start + per)
                h = (b - a) / n
                t, w = gauss_legendre_nodes(a + start * h, a + stop * h, stop - start)
                vals = integrand(t)
                total += float(np.sum(w * vals))
                mass += float(np.sum(w * np.abs(vals)))
        return total, mass, n * len(pieces)

    return _refine(estimate, cfg, what)


def line_integral_result(
    spec: PotentialSpec, path: ParamPath, cfg: QuadratureConfig = DEFAULT_CONFIG, check: bool = True
) -> QuadResult:
    """Circulation of ``spec`` along ``path`` with convergence diagnostics.

    ``check=False`` skips the dense patch-membership sweep; node-level domain
    checks still apply.
    """
    patch = spec.patch
    if check and not path_in_patch(path, patch):
        raise OutsideDomain(path.point(0.0), patch, f"path {path.label!r} leaves {patch}")
    codes, p1, p2 = spec.terms()

    def integrand(t):
        pts = path.points(t)
        d = patch.distance(pts)
        if np.any(d <= EPS_AXIS):
            raise OutsideDomain(pts[int(np.argmin(d))], patch)
        return kernels.circulation_integrand(pts, path.tangents(t), codes, p1, p2)

    return _integrate_path(integrand, path, cfg, "line integral")


def line_integral(spec: PotentialSpec, path: ParamPath, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    return line_integral_result(spec, path, cfg).value


def field_line_integral(field_fn, path: ParamPath, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadResult:
    """Line integral of an arbitrary vectorised field ``(n, 3) -> (n, 3)``."""

    def integrand(t):
        return np.einsum("ij,ij->i", field_fn(path.points(t)), path.tangents(t))

    return _integrate_path(integrand, path, cfg, "line integral")


def default_step(p) -> float:
    return 1e-4 * max(1.0, float(np.linalg.norm(as_points(p))))


def numeric_curl(spec: PotentialSpec, p, h: float | None = None) -> FieldSample:
    """Central-difference curl; the stencil ball of radius ``2h`` must lie in the patch."""
    pt = as_points(p)
    if h is None:
        h = default_step(pt)
    if not spec.patch.distance(pt) > 2 * h:
        raise OutsideDomain(pt, spec.patch, f"curl stencil of radius {2 * h:g} leaves {spec.patch}")
    offsets = np.vstack([np.eye(3), -np.eye(3)]) * h
    vals = potential_values(spec, pt + offsets, check=False)
    # jac[i, j] = d A_j / d x_i
    jac = (vals[:3] - vals[3:]) / (2 * h)
    curl = np.array(
        [jac[1, 2] - jac[2, 1], jac[2, 0] - jac[0, 2], jac[0, 1] - jac[1, 0]]
    )
    return FieldSample(curl, Point3(*pt))


def curl_field(spec: PotentialSpec, h: float | None = None):
    """Vectorised wrapper around :func:`numeric_curl`."""

    def fn(pts):
        return np.array([numeric_curl(spec, p, h).value for p in np.atleast_2d(pts)])

    return fn


def surface_flux_result(field_fn, surf: ParamSurface, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadResult:
    """Flux of ``field_fn`` through ``surf`` (oriented by ``d/du x d/dv``).

    ``field_fn`` maps an ``(n, 3)`` array of points to an ``(n, 3)`` array.
    """
    u_pieces, v_pieces = surf.pieces()

    def estimate(n):
        total = 0.0
        mass = 0.0
        for va, vb in v_pieces:
            v, wv = gauss_legendre_nodes(va, vb, n)
            rows = max(1, _CHUNK // v.size)
            for ua, ub in u_pieces:
                u, wu = gauss_legendre_nodes(ua, ub, n)
                for s in range(0, u.size, rows):
                    uu = u[s : s + rows]
                    U, Vg = np.meshgrid(uu, v, indexing="ij")
                    pts = surf.points(U, Vg).reshape(-1, 3)
                    normals = surf.normals(U, Vg).reshape(-1, 3)
                    try:
                        F = np.asarray(field_fn(pts), dtype=float)
                    except DomainError as exc:
                        raise FieldSingularOnSurface(str(exc)) from exc
                    if not np.all(np.isfinite(F)):
                        raise FieldSingularOnSurface("field is not finite on the surface")
                    vals = np.einsum("ij,ij->i", F, normals).reshape(U.shape)
                    W = wu[s : s + rows, None] * wv[None, :]
                    total += float(np.sum(W * vals))
                    mass += float(np.sum(W * np.abs(vals)))
        return total, mass, n * n * len(u_pieces) * len(v_pieces)

    return _refine(estimate, cfg, "surface flux")


def surface_flux(field_fn, surf: ParamSurface, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    return surface_flux_result(field_fn, surf, cfg).value


# ---------------------------------------------------------------------------
# annular Stokes


class StokesCase(enum.Enum):
    NON_INTERCEPTING = "NON_INTERCEPTING"
    AXIS_INTERCEPTING = "AXIS_INTERCEPTING"


@dataclass(frozen=True)
class StokesReport:
    boundary_integral: float
    inner_limit_integral: float
    flux: float
    case: StokesCase
    richardson_defect: float = 0.0
    inner_samples: tuple = ()
    winding: int = 0
    crossing: tuple | None = None

    def to_dict(self):
        return {
            "boundary_integral": self.boundary_integral,
            "inner_limit_integral": self.inner_limit_integral,
            "flux": self.flux,
            "case": self.case.value,
            "richardson_defect": self.richardson_defect,
            "inner_samples": [{"epsilon": e, "value": v} for e, v in self.inner_samples],
            "winding": self.winding,
        }


def _cell_flags(P: np.ndarray) -> np.ndarray:
    """Grid cells whose xy-projection wraps around or touches the z-axis."""
    x, y = P[..., 0], P[..., 1]
    rho = np.hypot(x, y)
    corners = [(slice(None, -1), slice(None, -1)), (slice(1, None), slice(None, -1)),
               (slice(1, None), slice(1, None)), (slice(None, -1), slice(1, None))]
    ang = [np.arctan2(y[c], x[c]) for c in corners]
    total = np.zeros(ang[0].shape)
    for k in range(4):
        d = ang[(k + 1) % 4] - ang[k]
        total += d - TWO_PI * np.floor(d / TWO_PI + 0.5)
    flags = np.abs(total) > math.pi
    for k in range(4):
        a, b = corners[k], corners[(k + 1) % 4]
        p0 = np.stack([x[a], y[a]], -1)
        e = np.stack([x[b], y[b]], -1) - p0
        ee = np.einsum("...i,...i", e, e)
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.where(ee > 0, -np.einsum("...i,...i", p0, e) / ee, 0.0)
        s = np.clip(s, 0.0, 1.0)
        dist = np.linalg.norm(p0 + s[..., None] * e, axis=-1)
        flags |= dist <= EPS_AXIS
    return flags


def axis_crossings(surf: ParamSurface, grid: int = 129):
    """Parameter values and points where the surface meets the z-axis."""
    g = np.linspace(0.0, 1.0, grid)
    U, V = np.meshgrid(g, g, indexing="ij")
    P = surf.points(U, V)
    flags = _cell_flags(P)
    labels, count = ndimage.label(flags, structure=np.ones((3, 3)))
    found = []
    for lab in range(1, count + 1):
        cells = np.argwhere(labels == lab)
        # a grid node already on the axis is an exact hit (e.g. a disk centre)
        nodes = np.vstack([cells, cells + [1, 0], cells + [0, 1], cells + [1, 1]])
        rho = np.hypot(P[nodes[:, 0], nodes[:, 1], 0], P[nodes[:, 0], nodes[:, 1], 1])
        k = int(np.argmin(rho))
        if rho[k] <= EPS_AXIS:
            uv = (float(g[nodes[k, 0]]), float(g[nodes[k, 1]]))
            pt = P[nodes[k, 0], nodes[k, 1]]
            if all(np.linalg.norm(pt - q) > 1e-7 for _, q in found):
                found.append((uv, pt))
            continue
        i, j = cells[len(cells) // 2]
        x0 = np.array([0.5 * (g[i] + g[i + 1]), 0.5 * (g[j] + g[j + 1])])

        def resid(uv):
            return surf.points(uv[0], uv[1])[:2]

        sol = optimize.least_squares(resid, x0, bounds=([0.0, 0.0], [1.0, 1.0]),
                                     xtol=1e-15, ftol=1e-15, gtol=1e-15)
        pt = surf.points(sol.x[0], sol.x[1])
        if math.hypot(pt[0], pt[1]) > 1e-7:
            continue
        if all(np.linalg.norm(pt - q) > 1e-7 for _, q in found):
            found.append((tuple(sol.x), pt))
    return found


def _normal_near(surf: ParamSurface, uv, delta: float = 1e-4) -> np.ndarray:
    u0, v0 = uv
    us = np.clip(u0 + np.array([-delta, delta, -delta, delta, 0.0]), 0.0, 1.0)
    vs = np.clip(v0 + np.array([-delta, -delta, delta, delta, 0.0]), 0.0, 1.0)
    n = surf.normals(us, vs)
    norms = np.linalg.norm(n, axis=1)
    good = norms > 0
    if not good.any():
        raise DomainError("surface normal is degenerate near the axis crossing")
    return np.sum(n[good] / norms[good, None], axis=0)


def inner_loop(epsilon: float, crossing, normal, winding: int) -> ParamPath:
    """Loop of cylindrical radius ``epsilon`` around the axis, on the tangent plane at the crossing."""
    c = np.asarray(crossing, dtype=float)
    n = np.asarray(normal, dtype=float)
    w = TWO_PI * winding

    def func(t):
        a = w * t
        x = epsilon * np.cos(a)
        y = epsilon * np.sin(a)
        z = c[2] - (n[0] * (x - c[0]) + n[1] * (y - c[1])) / n[2]
        return np.stack([x, y, z], axis=-1)

    def tangent(t):
        a = w * t
        dx = -epsilon * w * np.sin(a)
        dy = epsilon * w * np.cos(a)
        dz = -(n[0] * dx + n[1] * dy) / n[2]
        return np.stack([dx, dy, dz], axis=-1)

    return ParamPath(func, closed=True, samples_hint=64, tangent=tangent, label=f"inner(eps={epsilon:g})")


def richardson_limit(eps: Sequence[float], values: Sequence[float]):
    """Extrapolate ``I(eps) = I0 + a*eps + b*eps**2`` to ``eps = 0``.

    Returns the limit and its defect, the gap between the limit and the
    value on the smallest loop.
    """
    e = np.asarray(eps, dtype=float)
    v = np.asarray(values, dtype=float)
    A = np.vstack([np.ones_like(e), e, e * e]).T
    limit = float(np.linalg.solve(A, v)[0])
    return limit, abs(limit - float(v[np.argmin(e)]))


def _inner_radii(spec: PotentialSpec):
    shells = [ex.radius for ex in spec.patch.excluded if ex.kind is Excluded.CYLINDER_SHELL]
    top = min([INNER_RADII[0]] + [0.5 * r for r in shells])
    scale = top / INNER_RADII[0]
    return tuple(e * scale for e in INNER_RADII)


def stokes_annular(spec: PotentialSpec, surf: ParamSurface, cfg: QuadratureConfig = DEFAULT_CONFIG) -> StokesReport:
    """Flux of curl A through ``surf`` with the z-axis cut out by a shrinking loop."""
    if surf.boundary is None or not surf.boundary.closed:
        raise ValueError("stokes_annular needs a surface with a closed boundary")
    crossings = axis_crossings(surf)
    if len(crossings) > 1:
        raise MultipleInterceptions(f"surface meets the z-axis {len(crossings)} times; only one is supported")
    boundary = line_integral(spec, surf.boundary, cfg)
    w = winding_number(surf.boundary)
    if not crossings:
        if w != 0:
            raise DomainError("boundary winds around the axis but no crossing was found")
        return StokesReport(boundary, 0.0, boundary, StokesCase.NON_INTERCEPTING, winding=0)
    if abs(w) != 1:
        raise MultipleInterceptions(f"boundary winds {w} times around the axis")
    uv, c = crossings[0]
    n = _normal_near(surf, uv)
    if abs(n[2]) < 1e-6 * np.linalg.norm(n):
        raise DomainError("surface is tangent to the z-axis at the crossing")
    radii = _inner_radii(spec)
    samples = tuple((e, line_integral(spec, inner_loop(e, c, n, w), cfg)) for e in radii)
    limit, defect = richardson_limit(radii, [v for _, v in samples])
    return StokesReport(
        boundary,
        limit,
        boundary - limit,
        StokesCase.AXIS_INTERCEPTING,
        richardson_defect=defect,
        inner_samples=samples,
        winding=w,
        crossing=tuple(float(x) for x in c),
    )
