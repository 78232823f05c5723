import math

import numpy as np
import pytest

from gaugelab.geometry import ParamPath, circle, semicircle
from gaugelab.potentials import PotentialSpec

SEED = 20240611


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call compiles (or loads) the numba kernels; keep that out of timings
    from gaugelab.calculus import line_integral

    line_integral(PotentialSpec.pure_gauge_kappa(1.0), circle(1.0))


def star_loop(rng, winding, z_amp=None):
    """Random star-shaped closed loop winding ``winding`` times around the z-axis.

    For winding 0 the loop is moved off the axis far enough not to enclose it.
    """
    a = rng.uniform(0.5, 2.0)
    eps = rng.uniform(0.0, 0.4)
    k = int(rng.integers(1, 6))
    ph = rng.uniform(0, 2 * math.pi)
    h = rng.uniform(-1, 1) if z_amp is None else z_amp
    m = winding if winding != 0 else 1
    if winding == 0:
        ang = rng.uniform(0, 2 * math.pi)
        off = a * (1 + eps) + rng.uniform(0.2, 2.0)
        cx, cy = off * math.cos(ang), off * math.sin(ang)
    else:
        cx = cy = 0.0
    w = 2 * math.pi * m

    def func(t):
        th = w * t
        rho = a * (1 + eps * np.sin(k * th + ph))
        return np.column_stack([cx + rho * np.cos(th), cy + rho * np.sin(th), h * np.sin(2 * math.pi * t)])

    def tangent(t):
        th = w * t
        rho = a * (1 + eps * np.sin(k * th + ph))
        drho = a * eps * k * np.cos(k * th + ph)
        return np.column_stack(
            [
                (drho * np.cos(th) - rho * np.sin(th)) * w,
                (drho * np.sin(th) + rho * np.cos(th)) * w,
                2 * math.pi * h * np.cos(2 * math.pi * t),
            ]
        )

    return ParamPath(func, closed=True, samples_hint=256, tangent=tangent, label=f"star(w={winding})")


def random_reparam(rng):
    """Smooth monotone map of [0, 1] onto itself with its derivative."""
    amps = rng.uniform(-0.9, 0.9, size=3) / np.arange(1, 4) / 3.0
    ks = np.arange(1, 4)

    def s(t):
        return t + sum(a * np.sin(2 * math.pi * k * t) / (2 * math.pi * k) for a, k in zip(amps, ks))

    def ds(t):
        return 1 + sum(a * np.cos(2 * math.pi * k * t) for a, k in zip(amps, ks))

    return s, ds


def deformed_setup(rng, base):
    """Random taller/shorter semicircles with a sinusoidal wiggle, same topology as ``base``."""
    h_up, h_low = rng.uniform(2.0, 6.0, size=2)
    amp, kk = rng.uniform(0.0, 0.3), int(rng.integers(1, 5))

    def wiggle(path, sgn):
        def func(t):
            p = path.points(t)
            p[:, 1] += sgn * amp * np.sin(kk * math.pi * t)
            return p

        def tangent(t):
            d = path.tangents(t)
            d[:, 1] += sgn * amp * kk * math.pi * np.cos(kk * math.pi * t)
            return d

        return ParamPath(func, tangent=tangent, samples_hint=128, label="wiggled")

    src = base.source
    from gaugelab.abeffect import TwoPathSetup

    return TwoPathSetup(
        source=src,
        screen_points=base.screen_points,
        upper_path_builder=lambda p: wiggle(semicircle(src, p, 1, h_up), 1),
        lower_path_builder=lambda p: wiggle(semicircle(src, p, -1, h_low), -1),
        baseline_phase=base.baseline_phase,
    )


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
