"""One test per acceptance criterion, at the stated tolerances and time limits."""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import SEED, deformed_setup, star_loop
from gaugelab import geometry as geo
from gaugelab.abeffect import (
    DEFAULT_R,
    SolenoidConfig,
    default_setup,
    enclosed_flux,
    interference_pattern,
    kappa_invariance_experiment,
    relative_phases,
)
from gaugelab.calculus import QuadratureConfig, line_integral, line_integral_result, numeric_curl, stokes_annular, surface_flux
from gaugelab.gauge import (
    charge_spectrum,
    dirac_condition,
    gauge_difference_expected,
    holonomy,
    kappa_condition,
    single_valuedness,
    string_gauge_difference,
)
from gaugelab.potentials import PotentialSpec, monopole_field

K = PotentialSpec.pure_gauge_kappa
TWO_PI = 2 * math.pi


@pytest.fixture(scope="module")
def screen():
    setup = default_setup()
    assert len(setup) == 601
    return setup


def test_c1_circulation_law():
    t0 = time.perf_counter()
    enclosing = line_integral(K(1.0), geo.unit_circle())
    outside = line_integral(K(1.0), geo.circle(1.0, (5.0, 0.0, 0.0)))
    elapsed = time.perf_counter() - t0
    assert abs(enclosing - TWO_PI) < 1e-9
    assert abs(outside) < 1e-12
    assert elapsed < 1.0


def test_c2_annular_stokes():
    t0 = time.perf_counter()
    reports = {kappa: stokes_annular(K(kappa), geo.disk(1.0)) for kappa in (0.5, 1.0, 2.7)}
    elapsed = time.perf_counter() - t0
    for kappa, rep in reports.items():
        assert rep.case.value == "AXIS_INTERCEPTING"
        assert abs(rep.boundary_integral - TWO_PI * kappa) < 1e-9
        assert abs(rep.inner_limit_integral - TWO_PI * kappa) < 1e-9
        assert rep.richardson_defect < 1e-6
        assert abs(rep.flux) < 1e-6
    assert elapsed < 5.0


def test_c3_monopole_consistency():
    rng = np.random.default_rng(SEED)
    g = 1.3
    checked = 0
    while checked < 100:
        p = rng.uniform(-3, 3, size=3)
        r = np.linalg.norm(p)
        if r < 0.3 or math.hypot(p[0], p[1]) < 0.1:
            continue
        want = g * p / r**3
        for spec in (PotentialSpec.dirac_string_i(g), PotentialSpec.dirac_string_ii(g)):
            got = numeric_curl(spec, p).value
            assert np.max(np.abs(got - want)) < 1e-5
        checked += 1
    equator = geo.unit_circle()
    diff = line_integral(PotentialSpec.dirac_string_i(g), equator) - line_integral(
        PotentialSpec.dirac_string_ii(g), equator
    )
    assert abs(diff - 4 * math.pi * g) < 1e-9
    flux = surface_flux(lambda pts: monopole_field(g, pts), geo.sphere())
    assert abs(diff - flux) < 1e-6


def test_c4_gauge_difference():
    rng = np.random.default_rng(SEED)
    g = 0.8
    n = 0
    while n < 10_000:
        p = rng.uniform(-4, 4, size=3)
        if math.hypot(p[0], p[1]) < 1e-6:
            continue
        got = string_gauge_difference(g, p).value
        want = gauge_difference_expected(g, p)
        assert np.linalg.norm(got - want) <= 1e-12 * np.linalg.norm(want)
        n += 1


def test_c5_quantization():
    r = dirac_condition(1, 0.5)
    assert r.satisfied and r.nearest_integer == 1
    rng = np.random.default_rng(SEED)
    qs = rng.uniform(-4, 4, size=1000)
    kappas = rng.uniform(-4, 4, size=1000)
    kappas[::4] = rng.integers(-5, 6, size=250) / qs[::4]
    agree = [single_valuedness(q, k) == kappa_condition(q, k).satisfied for q, k in zip(qs, kappas)]
    assert all(agree)
    charges = set(charge_spectrum(3, 3).charges)
    assert charges == {Fraction(-1), Fraction(-2, 3), Fraction(-1, 3), Fraction(0), Fraction(1, 3), Fraction(2, 3), Fraction(1)}
    assert {-c for c in charges} == charges


def test_c6_ab_invariance(screen):
    cfg = SolenoidConfig()
    screen.check_topology(cfg.R)
    for q, kappa in ((1.0, 1.0), (1.0, 2.0), (1.0, 3.0)):
        t0 = time.perf_counter()
        rep = kappa_invariance_experiment(q, cfg, screen, kappa)
        assert time.perf_counter() - t0 < 10.0
        assert rep.quantized and rep.max_intensity_deviation < 1e-9
    t0 = time.perf_counter()
    rep = kappa_invariance_experiment(1.0, cfg, screen, 0.5)
    assert time.perf_counter() - t0 < 10.0
    assert not rep.quantized and abs(rep.max_intensity_deviation - 2.0) < 1e-6
    for q in (1.0, 2.0):
        shifted = SolenoidConfig.from_flux(enclosed_flux(cfg) + TWO_PI / q, cfg.R)
        a = interference_pattern(q, cfg.potential(), screen).intensities
        b = interference_pattern(q, shifted.potential(), screen).intensities
        assert np.max(np.abs(a - b)) < 1e-9


def test_c7_property_suites():
    rng = np.random.default_rng(SEED)
    # holonomy depends on the loop only through its winding number
    for _ in range(50):
        w = int(rng.integers(-3, 4))
        q, kappa = rng.uniform(-2, 2), rng.uniform(-2, 2)
        loop = star_loop(rng, w)
        assert geo.winding_number(loop) == w
        assert abs(holonomy(q, K(kappa), loop) - np.exp(1j * q * kappa * TWO_PI * w)) < 1e-9

    # AB phase is unchanged by deforming the paths without crossing the solenoid
    base = default_setup(n_points=9)
    spec = SolenoidConfig().potential()
    ref = relative_phases(1.0, spec, base)
    for _ in range(20):
        setup = deformed_setup(rng, base)
        setup.check_topology(DEFAULT_R)
        assert np.max(np.abs(relative_phases(1.0, spec, setup) - ref)) < 1e-9

    # panel doubling never increases the error on a near-axis loop
    for center, exact in (((1.02, 0, 0), 0.0), ((0.98, 0, 0), TWO_PI)):
        res = line_integral_result(K(1.0), geo.circle(1.0, center), QuadratureConfig(base_panels=4))
        errs = [abs(h - exact) for h in res.history]
        assert all(e1 <= e0 or e1 < 1e-13 for e0, e1 in zip(errs, errs[1:]))
        assert errs[-1] < 1e-10
