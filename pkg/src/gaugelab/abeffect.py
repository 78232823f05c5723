"""Two-path Aharonov-Bohm interference, computed semiclassically.

Each screen point is reached by an upper and a lower path around a solenoid on
the z-axis. The relative phase is the charge times the difference of the two
circulations; intensity is ``1 + cos(baseline + relative phase)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .calculus import DEFAULT_CONFIG, QuadratureConfig, line_integral_result
from .errors import OutsideDomain
from .gauge import _charge, kappa_condition
from .geometry import ParamPath, as_points, path_in_patch, semicircle, winding_number
from .potentials import PotentialSpec

DEFAULT_R = 0.1
# gives enclosed flux pi with the default radius: a half-fringe shift for q = 1
DEFAULT_B = 100.0


@dataclass(frozen=True)
class SolenoidConfig:
    B: float = DEFAULT_B
    R: float = DEFAULT_R

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("solenoid radius must be positive")

    @classmethod
    def from_flux(cls, flux: float, R: float = DEFAULT_R) -> "SolenoidConfig":
        return cls(flux / (math.pi * R * R), R)

    def potential(self) -> PotentialSpec:
        return PotentialSpec.ab_solenoid(self.B, self.R)


def enclosed_flux(cfg: SolenoidConfig) -> float:
    return cfg.B * math.pi * cfg.R**2


@dataclass
class TwoPathSetup:
    """Source, screen and the two path families joining them.

    ``upper_path_builder`` and ``lower_path_builder`` map a screen point to a
    path from the source; ``baseline_phase`` maps a screen point to the
    free-propagation phase difference.
    """

    source: np.ndarray
    screen_points: np.ndarray
    upper_path_builder: Callable[[np.ndarray], ParamPath]
    lower_path_builder: Callable[[np.ndarray], ParamPath]
    baseline_phase: Callable[[np.ndarray], float]
    screen_axis: int = 1
    _paths: dict = field(default_factory=dict, repr=False, compare=False)
    _validated: set = field(default_factory=set, repr=False, compare=False)

    def __post_init__(self):
        self.source = as_points(self.source)
        self.screen_points = np.atleast_2d(as_points(self.screen_points))

    def __len__(self):
        return len(self.screen_points)

    @property
    def positions(self) -> np.ndarray:
        return self.screen_points[:, self.screen_axis].copy()

    def paths(self, k: int):
        if k not in self._paths:
            p = self.screen_points[k]
            self._paths[k] = (self.upper_path_builder(p), self.lower_path_builder(p))
        return self._paths[k]

    def loop(self, k: int) -> ParamPath:
        """Upper path followed by the reversed lower path."""
        up, low = self.paths(k)
        return up.then(low.reversed())

    def baseline(self) -> np.ndarray:
        return np.array([self.baseline_phase(p) for p in self.screen_points])

    def validate(self, spec: PotentialSpec):
        """Check once per patch that every path stays in the potential's domain."""
        patch = spec.patch
        if patch in self._validated:
            return
        for k in range(len(self)):
            for path in self.paths(k):
                if not path_in_patch(path, patch):
                    raise OutsideDomain(self.screen_points[k], patch, f"path to screen point {k} leaves {patch}")
        self._validated.add(patch)

    def check_topology(self, R: float):
        """Every closed loop must wind once around the axis and stay outside ``rho = R``."""
        for k in range(len(self)):
            loop = self.loop(k)
            if abs(winding_number(loop)) != 1:
                raise ValueError(f"loop for screen point {k} does not wind once around the solenoid")
            pts = loop.sample(4096)
            if np.hypot(pts[:, 0], pts[:, 1]).min() <= R:
                raise ValueError(f"loop for screen point {k} enters the solenoid")


def default_setup(
    n_points: int = 601,
    half_width: float = 3.0,
    source=(-5.0, 0.0, 0.0),
    screen_x: float = 5.0,
    k: float = 50.0,
    slit_separation: float = 1.0,
    distance: float = 10.0,
) -> TwoPathSetup:
    """Source at x = -5, screen line x = +5, semicircular paths above and below the axis.

    The baseline phase is the far-field two-slit form ``k * y * d / L``.
    """
    src = np.asarray(source, dtype=float)
    ys = np.linspace(-half_width, half_width, n_points)
    screen = np.column_stack([np.full_like(ys, screen_x), ys, np.full_like(ys, src[2])])
    scale = k * slit_separation / distance
    return TwoPathSetup(
        source=src,
        screen_points=screen,
        upper_path_builder=lambda p: semicircle(src, p, side=+1),
        lower_path_builder=lambda p: semicircle(src, p, side=-1),
        baseline_phase=lambda p: scale * p[1],
    )


@dataclass(frozen=True)
class InterferencePattern:
    positions: np.ndarray
    intensities: np.ndarray

    def to_csv(self) -> str:
        lines = ["y,intensity"]
        lines += [f"{y:.12g},{i:.12g}" for y, i in zip(self.positions, self.intensities)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KappaInvarianceReport:
    max_intensity_deviation: float
    quantized: bool
    product: float
    argmax_position: float

    def to_dict(self):
        return {
            "max_intensity_deviation": self.max_intensity_deviation,
            "quantized": self.quantized,
            "product": self.product,
            "argmax_position": self.argmax_position,
        }


def ab_relative_phase(
    q, spec: PotentialSpec, setup: TwoPathSetup, screen_index: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """``q`` times (upper circulation - lower circulation) at one screen point."""
    setup.validate(spec)
    up, low = setup.paths(screen_index)
    a = line_integral_result(spec, up, cfg, check=False).value
    b = line_integral_result(spec, low, cfg, check=False).value
    return _charge(q) * (a - b)


def relative_phases(q, spec: PotentialSpec, setup: TwoPathSetup, cfg: QuadratureConfig = DEFAULT_CONFIG) -> np.ndarray:
    return np.array([ab_relative_phase(q, spec, setup, k, cfg) for k in range(len(setup))])


def interference_pattern(
    q, spec: PotentialSpec | None, setup: TwoPathSetup, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> InterferencePattern:
    """Intensity ``1 + cos(baseline + relative phase)`` at every screen point.

    ``spec=None`` means no vector potential at all.
    """
    phase = setup.baseline()
    if spec is not None and _charge(q) != 0.0:
        phase = phase + relative_phases(q, spec, setup, cfg)
    return InterferencePattern(setup.positions, 1.0 + np.cos(phase))


def kappa_invariance_experiment(
    q, cfg: SolenoidConfig, setup: TwoPathSetup, kappa: float, quad: QuadratureConfig = DEFAULT_CONFIG
) -> KappaInvarianceReport:
    """Compare patterns with and without the exterior azimuthal addition of strength ``kappa``."""
    base = cfg.potential()
    dressed = PotentialSpec.superposition(base, PotentialSpec.solenoid_kappa(kappa, cfg.R))
    p0 = interference_pattern(q, base, setup, quad)
    p1 = interference_pattern(q, dressed, setup, quad)
    dev = np.abs(p1.intensities - p0.intensities)
    k = int(np.argmax(dev))
    report = kappa_condition(q, kappa)
    return KappaInvarianceReport(float(dev[k]), report.satisfied, report.product, float(setup.positions[k]))
