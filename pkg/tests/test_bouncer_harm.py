import math

import numpy as np
import pytest
from scipy.integrate import quad

from scaledqm import bouncer_harm as bh
from scaledqm.errors import NumericsError
from scaledqm.quadrature import composite_gauss
from scaledqm.regime import GaussianMixedParams, Regime

OMEGA = 0.5   # trap units: length unit 1, time unit 4


@pytest.fixture(scope="module")
def state():
    return bh.HarmonicBouncerState(Regime(1.0), OMEGA, GaussianMixedParams(5.0, 1.0))


def packet0(z, z0=5.0, s0=1.0):
    return (2.0 * math.pi * s0**2) ** (-0.25) * np.exp(-((z - z0) ** 2) / (4.0 * s0**2))


def test_state_validation():
    with pytest.raises(ValueError):
        bh.HarmonicBouncerState(Regime(1.0), -0.5, GaussianMixedParams(5.0, 1.0))
    with pytest.raises(ValueError):
        bh.HarmonicBouncerState(Regime(1.0), 0.5, GaussianMixedParams(5.0, 1.0, lam=0.1))
    with pytest.raises(ValueError):
        bh.HarmonicBouncerState(Regime(1.0), 0.5, GaussianMixedParams(-5.0, 1.0))


def test_initial_gaussian(state):
    z = np.linspace(-4.0, 12.0, 300)
    assert np.max(np.abs(bh.sho_gaussian(state, z, 0.0) - packet0(z))) < 1e-12


def test_trap_evolution_is_unitary(state):
    for t in (0.4, 2.0, 5.5, math.pi / OMEGA + 0.3):
        norm = quad(lambda z: abs(bh.sho_gaussian(state, z, t)) ** 2, -25.0, 25.0,
                    limit=300)[0]
        assert norm == pytest.approx(1.0, abs=1e-10)


def test_trap_centre_follows_classical_cosine(state):
    for t in (0.7, 2.4, 4.9):
        centre = quad(lambda z: z * abs(bh.sho_gaussian(state, z, t)) ** 2, -25.0, 25.0,
                      limit=300)[0]
        assert centre == pytest.approx(5.0 * math.cos(OMEGA * t), abs=1e-9)


def test_revival_branch_is_continuous(state):
    for k in (1, 2):
        t_rev = k * math.pi / OMEGA
        direct = bh.sho_gaussian(state, 3.0, t_rev)
        nearby = bh.sho_gaussian(state, 3.0, t_rev - 1e-10)
        assert abs(direct - nearby) < 1e-9
        # exact revival: parity flip and a caustic phase per half period
        expected = (-1j) ** k * packet0(3.0 if k % 2 == 0 else -3.0)
        assert direct == pytest.approx(expected, abs=1e-12)


def test_hardwall_antisymmetry_and_domain(state):
    z = np.linspace(0.0, 10.0, 50)
    psi = bh.hardwall_wavefunction(state, z, 1.3)
    mirror = bh.sho_gaussian(state, -z, 1.3) - bh.sho_gaussian(state, z, 1.3)
    assert np.max(np.abs(psi + mirror)) < 1e-14
    assert abs(bh.hardwall_wavefunction(state, 0.0, 2.7)) < 1e-15
    with pytest.raises(ValueError):
        bh.hardwall_wavefunction(state, -0.5, 1.0)


def test_hardwall_norm_far_from_wall():
    # z0 = 7 sigma0: the image overlap exp(-z0^2/2s0^2) is below 1e-9
    far = bh.HarmonicBouncerState(Regime(1.0), OMEGA, GaussianMixedParams(7.0, 1.0))
    norm = quad(lambda z: abs(bh.hardwall_wavefunction(far, z, 0.0)) ** 2, 0.0, 22.0,
                limit=300)[0]
    assert norm == pytest.approx(1.0, abs=1e-9)


def test_position_expectation_t0_is_eps_independent():
    values = []
    for eps in (1.0, 0.5, 0.01):
        st = bh.HarmonicBouncerState(Regime(eps), OMEGA, GaussianMixedParams(5.0, 1.0))
        values.append(bh.position_expectation_closed(st, 0.0))
    expected = 5.0 * math.erf(5.0 / math.sqrt(2.0))
    assert np.max(np.abs(np.asarray(values) - expected)) < 1e-14


def test_position_expectation_closed_vs_quadrature(state):
    rng = np.random.default_rng(3)
    ts = rng.uniform(0.05, 20.0, 12)
    closed = bh.position_expectation_closed(state, ts)
    quadr = bh.position_expectation_quad(state, ts)
    assert np.max(np.abs(closed - quadr) / np.abs(quadr)) < 1e-7


def test_position_expectation_is_bounce_periodic(state):
    ts = np.linspace(0.1, 5.5, 40)
    period = math.pi / OMEGA
    a = bh.position_expectation_closed(state, ts)
    b = bh.position_expectation_closed(state, ts + period)
    assert np.max(np.abs(a - b) / np.abs(a)) < 1e-12


def test_eps_ordering_of_bounce_minima():
    t = np.linspace(2.0, 4.5, 400)
    minima = [float(np.min(bh.position_expectation_closed(
        bh.HarmonicBouncerState(Regime(eps), OMEGA, GaussianMixedParams(5.0, 1.0)), t)))
        for eps in (1.0, 0.5, 0.01)]
    assert minima[2] < minima[1] < minima[0]


def test_force_routes_and_value_at_t0(state):
    sample = bh.nonclassical_force(state, 0.0)
    # wall definition evaluated directly: (hbar_s^2/2m) |2 psi0'(0)|^2
    direct = 0.5 * (25.0 / math.sqrt(2.0 * math.pi)) * math.exp(-12.5)
    assert sample.f_nc == pytest.approx(direct, rel=1e-12)
    # finite-difference oracle on the odd-extended wavefunction
    h = 1e-6
    fd = (bh.hardwall_wavefunction(state, np.array([h]), 0.0)[0]) / h
    assert 0.5 * abs(fd) ** 2 == pytest.approx(sample.f_nc, rel=1e-5)


def test_force_positive_and_periodic(state):
    ts = np.linspace(0.0, 4.0 * math.pi / OMEGA, 160)
    f = bh.nonclassical_force_closed(state, ts)
    assert np.all(f >= 0.0)
    shift = bh.nonclassical_force_closed(state, ts + math.pi / OMEGA)
    assert np.max(np.abs(f - shift) / np.maximum(f, 1e-300)) < 1e-9


def test_force_sample_validation():
    with pytest.raises(ValueError):
        bh.ForceSample(t=0.0, f_nc=-1.0)


def test_ehrenfest_far_from_wall(state):
    grid = np.arange(0.0, 0.8, 4e-3)
    report = bh.ehrenfest_check(state, grid)
    assert report.residual_velocity < 1e-6
    assert report.residual_force < 1e-6
    with pytest.raises(ValueError):
        bh.ehrenfest_check(state, np.array([0.0, 0.1, 0.3]))


def test_ehrenfest_wall_term_essential(state):
    # window straddling the first bounce
    grid = np.arange(2.4, 4.0, 4e-3)
    report = bh.ehrenfest_check(state, grid)
    assert report.residual_force < 1e-5
    assert report.residual_force_no_wall > 1e-2


class _OddEigenstate:
    """First excited trap eigenstate: stationary, wall-compatible (odd)."""

    def __init__(self, regime, omega):
        self.regime = regime
        self.omega = omega
        self.hbar_s = regime.scaled_hbar()
        self.mass = regime.mass
        self._alpha = self.mass * omega / self.hbar_s
        self._energy = 1.5 * self.hbar_s * omega

    def _phase(self, t):
        return np.exp(-1j * self._energy * t / self.hbar_s)

    def _amp(self, z):
        a = self._alpha
        return (a / math.pi) ** 0.25 * math.sqrt(2.0 * a) * z * np.exp(-0.5 * a * z**2)

    def hardwall_psi(self, z, t):
        return self._amp(np.asarray(z, dtype=float)) * self._phase(t)

    def hardwall_dz(self, z, t):
        z = np.asarray(z, dtype=float)
        a = self._alpha
        return ((a / math.pi) ** 0.25 * math.sqrt(2.0 * a)
                * (1.0 - a * z**2) * np.exp(-0.5 * a * z**2) * self._phase(t))

    def hardwall_dz2(self, z, t):
        z = np.asarray(z, dtype=float)
        a = self._alpha
        return ((a / math.pi) ** 0.25 * math.sqrt(2.0 * a)
                * a * z * (a * z**2 - 3.0) * np.exp(-0.5 * a * z**2) * self._phase(t))

    def grad_v(self, z):
        return self.mass * self.omega**2 * np.asarray(z, dtype=float)

    def quad_rule(self, oversample=1.0):
        return composite_gauss(0.0, 14.0, 64, order=16)


def test_variance_rate_vanishes_for_eigenstate():
    eig = _OddEigenstate(Regime(0.7), 0.9)
    for t in (0.0, 1.3, 4.1):
        assert abs(bh.momentum_variance_rate(eig, t)) < 1e-10


class _FreePacketFarFromWall:
    """Freely spreading Gaussian released far above the floor (no trap)."""

    def __init__(self, regime, z0=30.0, s0=1.0):
        self.regime = regime
        self.omega = 0.0
        self.hbar_s = regime.scaled_hbar()
        self.mass = regime.mass
        self.z0 = z0
        self.s0 = s0

    def _tau(self, t):
        return 1.0 + 0.5j * self.hbar_s * t / (self.mass * self.s0**2)

    def _psi_line(self, z, t):
        tau = self._tau(t)
        return ((2.0 * math.pi * self.s0**2) ** (-0.25) / np.sqrt(tau)
                * np.exp(-((z - self.z0) ** 2) / (4.0 * self.s0**2 * tau)))

    def _dpsi_line(self, z, t):
        tau = self._tau(t)
        return self._psi_line(z, t) * (-(z - self.z0) / (2.0 * self.s0**2 * tau))

    def _d2psi_line(self, z, t):
        tau = self._tau(t)
        g1 = -(z - self.z0) / (2.0 * self.s0**2 * tau)
        return self._psi_line(z, t) * (g1**2 - 1.0 / (2.0 * self.s0**2 * tau))

    def hardwall_psi(self, z, t):
        return self._psi_line(np.asarray(z, dtype=float), t) - self._psi_line(-np.asarray(z, dtype=float), t)

    def hardwall_dz(self, z, t):
        z = np.asarray(z, dtype=float)
        return self._dpsi_line(z, t) + self._dpsi_line(-z, t)

    def hardwall_dz2(self, z, t):
        z = np.asarray(z, dtype=float)
        return self._d2psi_line(z, t) - self._d2psi_line(-z, t)

    def grad_v(self, z):
        return np.zeros_like(np.asarray(z, dtype=float))

    def quad_rule(self, oversample=1.0):
        return composite_gauss(0.0, 60.0, 240, order=16)


def test_variance_rate_free_packet_matches_constant_spread():
    # a free Gaussian's momentum variance is constant: the rate must vanish
    # and match the analytic module's time-independent p-variance
    from scaledqm.analytic import ClosedFormDensity, Free, free_moments
    from scaledqm.regime import GaussianMixedParams as GMP

    packet = _FreePacketFarFromWall(Regime(0.8))
    for t in (0.5, 2.0):
        assert abs(bh.momentum_variance_rate(packet, t)) < 1e-9
    var = bh.momentum_variance(packet, 1.0)
    cfd = ClosedFormDensity(Free(), GMP(30.0, 1.0), Regime(0.8))
    m = free_moments(cfd, 1.0)
    assert var == pytest.approx(m.p2_mean - m.p_mean**2, rel=1e-10)


def test_variance_rate_matches_finite_difference(state):
    h = 2e-4
    tc = 5.1
    var = bh.momentum_variance(state, np.array([tc - 2 * h, tc - h, tc + h, tc + 2 * h]))
    fd_rate = (-var[3] + 8.0 * var[2] - 8.0 * var[1] + var[0]) / (12.0 * h)
    assert bh.momentum_variance_rate(state, tc) == pytest.approx(fd_rate, rel=1e-5)
