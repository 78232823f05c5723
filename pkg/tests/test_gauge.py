import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import star_loop
from gaugelab import geometry as geo
from gaugelab.errors import InvalidN, OutsideDomain
from gaugelab.gauge import (
    ChargeSpec,
    charge_spectrum,
    dirac_condition,
    factorized_kappa_condition,
    gauge_difference_expected,
    holonomy,
    kappa_condition,
    kappa_spectrum,
    single_valuedness,
    string_gauge_difference,
)
from gaugelab.potentials import PotentialSpec

K = PotentialSpec.pure_gauge_kappa


def test_holonomy_examples():
    assert abs(holonomy(1.0, K(1.0), geo.unit_circle()) - 1) < 1e-12
    assert abs(holonomy(ChargeSpec(0.5), K(1.0), geo.unit_circle()) + 1) < 1e-12
    h = holonomy(0.37, K(2.2), geo.circle(0.5, (3, 1, 0)))
    assert abs(h - 1) < 1e-12 and abs(abs(h) - 1) < 1e-12


def test_holonomy_needs_closed_loop():
    with pytest.raises(ValueError):
        holonomy(1.0, K(1.0), geo.segment((1, 0, 0), (2, 0, 0)))


def test_holonomy_depends_only_on_winding(rng):
    for _ in range(25):
        w = int(rng.integers(-2, 3))
        q, kappa = rng.uniform(-2, 2), rng.uniform(-2, 2)
        h1 = holonomy(q, K(kappa), star_loop(rng, w))
        h2 = holonomy(q, K(kappa), star_loop(rng, w))
        assert abs(h1 - h2) < 1e-9
        assert abs(abs(h1) - 1) < 1e-12


def test_string_gauge_difference_examples():
    p = geo.from_spherical(1.0, math.pi / 2, 0.3)
    assert np.dot(string_gauge_difference(1.0, p).value, geo.phi_hat(p)) == pytest.approx(2.0, rel=1e-14)
    p = geo.from_spherical(2.0, math.pi / 2, 1.0)
    assert np.dot(string_gauge_difference(1.0, p).value, geo.phi_hat(p)) == pytest.approx(1.0, rel=1e-14)
    th = math.pi / 4
    p = geo.from_spherical(1.0, th, 2.0)
    # independent evaluation of both string potentials in polar-angle form
    direct = 0.5 * (1 - math.cos(th)) / math.sin(th) + 0.5 * (1 + math.cos(th)) / math.sin(th)
    assert direct == pytest.approx(1.41421356, abs=1e-8)
    assert np.dot(string_gauge_difference(0.5, p).value, geo.phi_hat(p)) == pytest.approx(direct, rel=1e-14)


def test_string_gauge_difference_off_axis_only():
    with pytest.raises(OutsideDomain):
        string_gauge_difference(1.0, (0, 0, 2))


def test_string_gauge_difference_pointwise_identity(rng):
    pts = rng.uniform(-5, 5, size=(10_000, 3))
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) > 1e-6]
    for p in pts:
        g = 1.7
        got = string_gauge_difference(g, p).value
        want = gauge_difference_expected(g, p)
        assert np.linalg.norm(got - want) <= 1e-12 * np.linalg.norm(want)


@pytest.mark.parametrize(
    "q, g, n, ok",
    [(1, 0.5, 1, True), (1, 0.3, 1, False), (-2, 0.25, -1, True)],
)
def test_dirac_condition_examples(q, g, n, ok):
    r = dirac_condition(q, g)
    assert r.satisfied is ok
    assert r.nearest_integer == n
    assert r.defect == pytest.approx(abs(r.product - n))


def test_dirac_product_value():
    assert dirac_condition(1, 0.3).product == pytest.approx(0.6)


@settings(max_examples=300, deadline=None)
@given(st.integers(-50, 50), st.integers(1, 12), st.integers(-8, 8).filter(lambda k: k != 0))
def test_dirac_invariances(n, m, k):
    # q g = n / 2 built constructively; rescaling keeps 2 q g fixed
    q = m / 3.0
    g = n / (2.0 * q)
    assert dirac_condition(q, g).satisfied
    assert dirac_condition(-q, -g).satisfied
    assert dirac_condition(q * k, g / k).satisfied
    # half-integer product breaks it
    assert not dirac_condition(q, g + 0.25 / q).satisfied


@pytest.mark.parametrize("q, kappa, n, ok", [(1 / 3, 3, 1, True), (1, 0, 0, True), (1, 0.5, None, False)])
def test_kappa_condition_examples(q, kappa, n, ok):
    r = kappa_condition(q, kappa)
    assert r.satisfied is ok
    if n is not None:
        assert r.nearest_integer == n


def test_factorized_condition_reported_separately():
    r = factorized_kappa_condition(2 / 3, 6, 3)
    assert r.n_q.nearest_integer == 2 and r.n_kappa.nearest_integer == 2 and r.satisfied
    # q kappa integer but kappa not a multiple of N
    r = factorized_kappa_condition(1.0, 2.0, 3)
    assert kappa_condition(1.0, 2.0).satisfied and not r.satisfied
    assert r.n_q.satisfied and not r.n_kappa.satisfied


def test_kappa_spectrum():
    assert kappa_spectrum(1, 2) == [-2, -1, 0, 1, 2]
    assert kappa_spectrum(3, 1) == [-3, 0, 3]
    assert kappa_spectrum(2, 0) == [0]
    with pytest.raises(InvalidN):
        kappa_spectrum(0, 1)


def test_charge_spectrum():
    s = charge_spectrum(3, 3)
    assert s.charges == tuple(Fraction(n, 3) for n in range(-3, 4))
    assert charge_spectrum(1, 2).charges == tuple(Fraction(n) for n in range(-2, 3))
    with pytest.raises(InvalidN):
        charge_spectrum(0, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(-20, 20).filter(lambda n: n != 0), st.integers(0, 40))
def test_charge_spectrum_symmetric(N, M):
    s = set(charge_spectrum(N, M).charges)
    assert {-c for c in s} == s
    assert 0 in s
    if M >= abs(N):
        assert 1 in s and -1 in s


def test_charge_spectrum_kappa_consistency():
    # every allowed charge times every allowed kappa is an integer
    N = 3
    for q in charge_spectrum(N, 6).charges:
        for kappa in kappa_spectrum(N, 3):
            assert kappa_condition(float(q), kappa).satisfied


def test_single_valuedness_examples():
    assert single_valuedness(1.0, 2.0)
    assert not single_valuedness(0.5, 1.0)
    assert single_valuedness(0.0, 7.3)


def test_single_valuedness_agrees_with_kappa_condition(rng):
    qs = rng.uniform(-5, 5, size=1000)
    kappas = rng.uniform(-5, 5, size=1000)
    # a third of the pairs are built to be exactly quantized
    for i in range(0, 1000, 3):
        kappas[i] = int(rng.integers(-6, 7)) / qs[i]
    for q, kappa in zip(qs, kappas):
        assert single_valuedness(q, kappa) == kappa_condition(q, kappa).satisfied
