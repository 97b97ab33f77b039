import math

import numpy as np
import pytest
from scipy.integrate import quad

from scaledqm import bouncer_grav as bg
from scaledqm.errors import TruncationError
from scaledqm.regime import GaussianMixedParams

PACKET = GaussianMixedParams(x0=5.0, sigma0=1.0)
ROOT_1 = 2.3381074104597670385
ROOT_1_MINUS_ROOT_2 = 1.7498420336712036


@pytest.fixture(scope="module")
def state_eps1():
    return bg.expand_gaussian(1.0, PACKET, tol=1e-7)


def test_eigensystem_values_and_boundary():
    energy, u = bg.scaled_eigensystem(1.0, 1)
    assert energy == pytest.approx(ROOT_1, rel=1e-13)
    assert abs(u(0.0)) < 1e-13
    e_half, _ = bg.scaled_eigensystem(0.5, 1)
    assert e_half == pytest.approx(ROOT_1 * 0.5 ** (1.0 / 3.0), rel=1e-13)
    with pytest.raises(ValueError):
        bg.scaled_eigensystem(1.0, 0)


def test_eigensystem_orthonormality():
    _, u1 = bg.scaled_eigensystem(0.5, 1)
    _, u2 = bg.scaled_eigensystem(0.5, 2)
    norm = quad(lambda z: u1(z) ** 2, 0.0, 14.0, limit=200)[0]
    overlap = quad(lambda z: u1(z) * u2(z), 0.0, 14.0, limit=200)[0]
    assert norm == pytest.approx(1.0, abs=1e-8)
    assert abs(overlap) < 1e-8


def test_wkb_energies():
    assert bg.wkb_energy(1) == pytest.approx((9.0 * math.pi / 8.0) ** (2.0 / 3.0), rel=1e-14)
    rel1 = abs(bg.wkb_energy(1) - ROOT_1) / ROOT_1
    assert 0.005 <= rel1 <= 0.010           # the ~0.76% ground-state deviation
    assert rel1 == pytest.approx(7.637e-3, abs=2e-5)
    e10 = bg.exact_energy(10)
    assert abs(bg.wkb_energy(10) - e10) / e10 < 5e-4


def test_level_spacing():
    assert bg.level_spacing(1e-3, 1) / bg.level_spacing(1.0, 1) == pytest.approx(0.1, rel=1e-13)
    assert bg.level_spacing(1.0, 1) == pytest.approx(ROOT_1_MINUS_ROOT_2, rel=1e-12)
    eps = np.logspace(-6, 0, 13)
    gaps = np.array([bg.level_spacing(e, 4) for e in eps])
    assert np.all(gaps > 0.0) and np.all(np.diff(gaps) > 0.0)


def test_expand_gaussian_validation():
    with pytest.raises(ValueError):
        bg.expand_gaussian(1.0, GaussianMixedParams(5.0, 1.0, lam=0.2))
    with pytest.raises(ValueError):
        bg.expand_gaussian(1.0, GaussianMixedParams(5.0, 1.0, p0=1.0))
    with pytest.raises(ValueError):
        bg.expand_gaussian(1.0, GaussianMixedParams(-5.0, 1.0))
    with pytest.raises(ValueError):
        bg.expand_gaussian(1.0, PACKET, tol=0.5)
    with pytest.raises(TruncationError):
        bg.expand_gaussian(0.01, PACKET, tol=1e-6, n_max=16)


def test_captured_norm_grows_with_tolerance():
    captured = [bg.expand_gaussian(1.0, PACKET, tol=tol).captured_norm
                for tol in (1e-3, 1e-5, 1e-7)]
    assert captured[0] <= captured[1] <= captured[2] <= 1.0 + 1e-12
    assert captured[2] >= (1.0 - 1e-7) * bg.halfline_mass(PACKET)


def test_mode_count_grows_toward_classical():
    # at fixed captured-norm quality the classical direction needs far more modes
    n99 = {}
    for eps in (0.8, 0.01):
        state = bg.expand_gaussian(eps, PACKET, tol=1e-6)
        cumulative = np.cumsum(state.coeffs**2)
        n99[eps] = int(np.searchsorted(cumulative, 0.99) + 1)
    assert n99[0.01] > 4 * n99[0.8]


def test_closed_form_coefficient_approximation():
    # packet well away from the wall: the closed shifted-Airy form applies
    packet = GaussianMixedParams(x0=10.0, sigma0=0.5)
    state = bg.expand_gaussian(1.0, packet, tol=1e-7)
    for n in (5, 10, 15):
        approx = bg.approx_coefficient(1.0, packet, n)
        assert approx == pytest.approx(state.coeffs[n - 1], rel=1e-6)


def test_evolution_reproduces_initial_gaussian(state_eps1):
    z = np.linspace(0.0, 12.0, 600)
    psi0 = bg.evolve(state_eps1, z, 0.0)
    target = (2.0 * math.pi) ** (-0.25) * np.exp(-((z - 5.0) ** 2) / 4.0)
    l2 = math.sqrt(np.trapezoid(np.abs(psi0 - target) ** 2, z))
    assert l2 < math.sqrt(1e-7)


def test_norm_is_conserved(state_eps1):
    t = np.linspace(0.0, 30.0, 16)
    norms = np.atleast_1d(bg.norm_series(state_eps1, t))
    assert np.max(np.abs(norms - state_eps1.captured_norm)) < 1e-10


def test_wavefunction_vanishes_at_wall(state_eps1):
    t = np.linspace(0.0, 20.0, 9)
    vals = bg.evolve_grid(state_eps1, np.array([0.0]), t)
    assert np.max(np.abs(vals)) < 1e-12


def test_position_expectation_routes_agree():
    state = bg.expand_gaussian(0.04, PACKET, tol=1e-6)
    t = np.linspace(0.0, 9.0, 11)
    direct = np.atleast_1d(bg.position_expectation(state, t))
    barred = np.atleast_1d(bg.position_expectation_bar_route(state, t))
    assert np.max(np.abs(direct - barred)) < 1e-8


def test_position_expectation_oscillates_about_classical_mean(state_eps1):
    tau = bg.ClassicalBouncer(5.0, g=2.0).period
    t = np.linspace(0.0, 6.0 * tau, 181)
    zav = np.atleast_1d(bg.position_expectation(state_eps1, t))
    assert 3.0 <= float(np.mean(zav)) <= 3.7
    assert zav[0] == pytest.approx(5.0, abs=5e-4)


def test_autocorrelation(state_eps1):
    a0 = bg.autocorrelation(state_eps1, 0.0)
    assert abs(a0) == pytest.approx(state_eps1.captured_norm, rel=1e-12)
    t = np.linspace(0.0, 25.0, 301)
    amp = np.abs(bg.autocorrelation(state_eps1, t))
    assert np.max(amp) <= state_eps1.captured_norm + 1e-10


def test_smaller_eps_decays_autocorrelation_faster():
    t = np.linspace(0.0, 25.0, 301)
    means = {}
    for eps in (1.0, 0.1):
        state = bg.expand_gaussian(eps, PACKET, tol=1e-6)
        means[eps] = float(np.mean(np.abs(bg.autocorrelation(state, t)) ** 2))
    assert means[0.1] < means[1.0]


def test_classical_bounce_geometry():
    cb = bg.ClassicalBouncer(5.0, g=1.0)
    tau = cb.period
    assert tau == pytest.approx(2.0 * math.sqrt(10.0), rel=1e-14)
    assert bg.classical_bounce(cb, 0.5 * tau) == pytest.approx(0.0, abs=1e-12)
    assert bg.classical_bounce(cb, tau) == pytest.approx(5.0, rel=1e-12)
    # continuity at the bounce instant and periodic extension
    below = bg.classical_bounce(cb, 0.5 * tau - 1e-9)
    above = bg.classical_bounce(cb, 0.5 * tau + 1e-9)
    assert abs(below - above) < 1e-7
    t = np.linspace(0.0, tau, 41)
    assert np.max(np.abs(bg.classical_bounce(cb, t + 3 * tau) - bg.classical_bounce(cb, t))) < 1e-10


def test_classical_averages():
    time_avg, ensemble = bg.classical_averages(PACKET)
    assert time_avg(5.0) == pytest.approx(10.0 / 3.0, abs=1e-12)
    assert ensemble == pytest.approx(10.0 / 3.0, abs=1e-12)
    cb = bg.ClassicalBouncer(5.0, g=1.0)
    tau = cb.period
    numeric = (quad(lambda t: bg.classical_bounce(cb, t), 0.0, tau / 2)[0]
               + quad(lambda t: bg.classical_bounce(cb, t), tau / 2, tau)[0]) / tau
    assert numeric == pytest.approx(10.0 / 3.0, abs=1e-8)
    with pytest.raises(ValueError):
        bg.classical_averages(GaussianMixedParams(5.0, 1.0, p0=1.0))
    with pytest.raises(ValueError):
        bg.ClassicalBouncer(-1.0)


def test_energy_expectation_matches_coefficients(state_eps1):
    e = bg.energy_expectation(state_eps1)
    manual = float(np.sum(state_eps1.coeffs**2 * (-state_eps1.roots)))
    assert e == pytest.approx(manual, rel=1e-14)
