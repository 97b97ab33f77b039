"""Closed-form evolution of the Gaussian mixed state in simple potentials.

Every evaluator comes in two kinds: the scaled kind (any epsilon in (0, 1],
all phases divided by the scaled Planck constant) and the classical kind
(the singular limit, with its own closed forms and the unscaled Planck
constant in the phases).  Scenarios: free space, free space with a hard wall
at the origin (image sums), uniform field, harmonic trap.

The free-space amplitude/phase pair is implemented from its printed closed
form; the uniform-field and harmonic scaled density matrices are produced by
exact complex-Gaussian integration of the quadratic propagators against the
initial state, which reproduces the free-space closed form to rounding and
extends it to the other potentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ScenarioError, SingularTimeError
from .quadrature import adaptive_quad
from .regime import GaussianMixedParams, Regime

SIN_SINGULAR_TOL = 1e-9


# ----------------------------------------------------------------------
# scenarios and distribution types
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Free:
    pass


@dataclass(frozen=True)
class HalfSpaceFree:
    pass


@dataclass(frozen=True)
class Linear:
    g: float

    def __post_init__(self):
        if not self.g > 0.0:
            raise ValueError(f"field strength g must be positive; got {self.g!r}")


@dataclass(frozen=True)
class Harmonic:
    omega: float

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValueError(f"omega must be positive; got {self.omega!r}")


Scenario = Union[Free, HalfSpaceFree, Linear, Harmonic]


@dataclass(frozen=True)
class GaussianDist:
    """Normalised Gaussian momentum distribution."""

    mean: float
    width: float

    def __post_init__(self):
        if not self.width > 0.0:
            raise ValueError("Gaussian width must be positive")

    def density(self, p):
        p = np.asarray(p, dtype=float)
        return np.exp(-((p - self.mean) ** 2) / (2.0 * self.width**2)) / (
            math.sqrt(2.0 * math.pi) * self.width
        )


@dataclass(frozen=True)
class DiracDist:
    """Symbolic point distribution; kept tagged so classical-limit
    assertions stay exact instead of comparing against narrow Gaussians."""

    at: float


MomentumDistribution = Union[GaussianDist, DiracDist]


@dataclass(frozen=True)
class ClosedFormDensity:
    """Evaluator state: scenario, initial mixed-state parameters, and the
    dynamical kind (a :class:`Regime` for the scaled theory, ``None`` for
    the classical limit)."""

    scenario: Scenario
    params: GaussianMixedParams
    regime: Regime | None = None
    hbar: float = 1.0   # classical-kind Planck constant (phases of Eq.-38-type forms)
    mass: float = field(default=1.0)

    def __post_init__(self):
        if self.regime is not None:
            object.__setattr__(self, "hbar", self.regime.hbar)
            object.__setattr__(self, "mass", self.regime.mass)
        if isinstance(self.scenario, (Linear, Harmonic)) and self.params.p0 != 0.0:
            raise ScenarioError(
                "linear/harmonic closed forms are stated for zero kick momentum only; "
                f"got p0 = {self.params.p0!r} (use the grid oracle for kicked packets)"
            )
        if not self.hbar > 0.0 or not self.mass > 0.0:
            raise ValueError("hbar and mass must be positive")

    @property
    def is_classical(self) -> bool:
        return self.regime is None

    @property
    def hbar_eff(self) -> float:
        """hbar entering the phases: scaled for a regime, bare classically."""
        return self.hbar if self.regime is None else self.regime.scaled_hbar()


def _lam_ratio(params: GaussianMixedParams) -> float:
    return (1.0 + params.lam) / (1.0 - params.lam)


def sigma_t(regime: Regime | None, params: GaussianMixedParams, t):
    """Free-evolution rms width; the classical kind preserves sigma0."""
    t = np.asarray(t, dtype=float)
    if regime is None:
        return np.broadcast_to(params.sigma0, t.shape).copy() if t.shape else params.sigma0
    hs = regime.scaled_hbar()
    arg = 1.0 + _lam_ratio(params) * (hs * t) ** 2 / (
        4.0 * regime.mass**2 * params.sigma0**4
    )
    out = params.sigma0 * np.sqrt(arg)
    return float(out) if out.ndim == 0 else out


def momentum_width(cfd: ClosedFormDensity) -> float:
    """Width of the measured momentum distribution (time independent)."""
    return (
        cfd.hbar_eff / (2.0 * cfd.params.sigma0) * math.sqrt(_lam_ratio(cfd.params))
    )


# ----------------------------------------------------------------------
# free space
# ----------------------------------------------------------------------


def _require(cfd, scenario_types, opname):
    if not isinstance(cfd.scenario, scenario_types):
        raise ScenarioError(
            f"{opname} applies to {scenario_types}; got {type(cfd.scenario).__name__}"
        )


def _free_amp_phase(cfd, x, y, t, width):
    """Shared amplitude/phase body of the free mixed state with a given width."""
    p = cfd.params
    lam = p.lam
    m = cfd.mass
    drift = p.p0 * t / m
    quad_part = (
        (x**2 + y**2) / (2.0 * (1.0 - lam))
        - lam * x * y / (1.0 - lam)
        + 2.0 * p.x0 * drift
        - (p.x0 + drift) * (x + y)
        + p.x0**2
        + drift**2
    )
    amp = np.exp(-quad_part / (2.0 * width**2)) / (math.sqrt(2.0 * math.pi) * width)
    return amp


def free_density(cfd: ClosedFormDensity, x, y, t):
    """Amplitude and phase of the free-space density matrix.

    The full matrix is ``amp * exp(1j * phase / hbar_eff)``.
    """
    _require(cfd, (Free, HalfSpaceFree), "free_density")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = cfd.params
    m = cfd.mass
    if cfd.is_classical:
        amp = _free_amp_phase(cfd, x, y, t, p.sigma0)
        phase = p.p0 * (x - y) * np.ones_like(amp)
        return amp, phase
    hs = cfd.hbar_eff
    width = sigma_t(cfd.regime, p, t)
    amp = _free_amp_phase(cfd, x, y, t, width)
    phase = (
        hs**2 * t * _lam_ratio(p) / (8.0 * m * p.sigma0**2 * width**2)
    ) * (x**2 - y**2 - 2.0 * p.x0 * (x - y)) + (p.sigma0**2 / width**2) * p.p0 * (x - y)
    return amp, phase


def momentum_density_matrix(cfd: ClosedFormDensity, p, q, t):
    """Scaled free density matrix in the momentum representation."""
    _require(cfd, Free, "momentum_density_matrix")
    if cfd.is_classical:
        raise ScenarioError("momentum_density_matrix is defined for the scaled kind")
    par = cfd.params
    lam = par.lam
    hs = cfd.hbar_eff
    m = cfd.mass
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pref = (par.sigma0 / hs) * math.sqrt(2.0 / math.pi * (1.0 - lam) / (1.0 + lam))
    phase = -(p - q) * ((p + q) * t + 2.0 * m * par.x0) / (2.0 * m * hs)
    gauss = (
        par.sigma0**2
        * ((p - par.p0) ** 2 + (q - par.p0) ** 2 - 2.0 * lam * (p - par.p0) * (q - par.p0))
        / ((1.0 + lam) * hs**2)
    )
    return pref * np.exp(1j * phase - gauss)


def position_pd(cfd: ClosedFormDensity, x, t):
    """Diagonal probability density of the free state."""
    _require(cfd, Free, "position_pd")
    x = np.asarray(x, dtype=float)
    p = cfd.params
    width = p.sigma0 if cfd.is_classical else sigma_t(cfd.regime, p, t)
    center = p.x0 + p.p0 * t / cfd.mass
    return np.exp(-((x - center) ** 2) / (2.0 * width**2)) / (
        math.sqrt(2.0 * math.pi) * width
    )


def momentum_pd(cfd: ClosedFormDensity) -> MomentumDistribution:
    """Measured momentum distribution (time independent).

    Classically every ensemble member carries the kick momentum, so the
    classical kind reports a tagged Dirac distribution.
    """
    _require(cfd, Free, "momentum_pd")
    if cfd.is_classical:
        return DiracDist(at=cfd.params.p0)
    return GaussianDist(mean=cfd.params.p0, width=momentum_width(cfd))


@dataclass(frozen=True)
class FreeMoments:
    x_mean: float
    x2_mean: float
    p_mean: float
    p2_mean: float
    uncertainty_product: float


def free_moments(cfd: ClosedFormDensity, t) -> FreeMoments:
    """First and second moments plus the uncertainty product, free scaled state."""
    _require(cfd, Free, "free_moments")
    if cfd.is_classical:
        raise ScenarioError("free_moments is stated for the scaled kind")
    p = cfd.params
    width = sigma_t(cfd.regime, p, t)
    xm = p.x0 + p.p0 * t / cfd.mass
    sp = momentum_width(cfd)
    return FreeMoments(
        x_mean=xm,
        x2_mean=xm**2 + width**2,
        p_mean=p.p0,
        p2_mean=p.p0**2 + sp**2,
        uncertainty_product=width * sp,
    )


def momentum_field_free(cfd: ClosedFormDensity, x, t):
    """Phase-gradient momentum field of the free scaled state."""
    _require(cfd, Free, "momentum_field_free")
    x = np.asarray(x, dtype=float)
    p = cfd.params
    if cfd.is_classical:
        return np.broadcast_to(p.p0, x.shape).copy() if x.shape else p.p0
    hs = cfd.hbar_eff
    width = sigma_t(cfd.regime, p, t)
    out = p.p0 * p.sigma0**2 / width**2 + (
        hs**2 * t * _lam_ratio(p) / (4.0 * cfd.mass * p.sigma0**2 * width**2)
    ) * (x - p.x0)
    return float(out) if np.ndim(out) == 0 else out


def scaled_trajectory_free(cfd: ClosedFormDensity, x0_init, t):
    """Dressed trajectory: classical drift plus the width-driven term."""
    _require(cfd, Free, "scaled_trajectory_free")
    x0_init = np.asarray(x0_init, dtype=float)
    p = cfd.params
    drift = p.x0 + p.p0 * np.asarray(t, dtype=float) / cfd.mass
    if cfd.is_classical:
        out = x0_init + p.p0 * np.asarray(t, dtype=float) / cfd.mass
    else:
        width = sigma_t(cfd.regime, p, t)
        out = drift + (x0_init - p.x0) * width / p.sigma0
    return float(out) if np.ndim(out) == 0 else out


def actual_momentum_distribution(cfd: ClosedFormDensity, t) -> MomentumDistribution:
    """Distribution of trajectory momenta induced by the initial positions.

    Distinct from the measured momentum density; its width is m dsigma/dt and
    it degenerates to a Dirac point at t = 0 and in the classical kind.
    """
    _require(cfd, Free, "actual_momentum_distribution")
    p = cfd.params
    if cfd.is_classical:
        return DiracDist(at=p.p0)
    hs = cfd.hbar_eff
    width = sigma_t(cfd.regime, p, t)
    big_sigma = (
        cfd.regime.epsilon
        * cfd.regime.hbar**2
        * t
        * _lam_ratio(p)
        / (4.0 * cfd.mass * p.sigma0**2 * width)
    )
    if abs(big_sigma) < 1e-300:
        return DiracDist(at=p.p0)
    return GaussianDist(mean=p.p0, width=big_sigma)


# ----------------------------------------------------------------------
# half space (hard wall at the origin)
# ----------------------------------------------------------------------


def _free_rho_complex(cfd, x, y, t):
    amp, phase = free_density(cfd, x, y, t)
    return amp * np.exp(1j * phase / cfd.hbar_eff)


def halfspace_density(cfd: ClosedFormDensity, x, y, t):
    """Four-term image combination of the free density matrix, x, y >= 0."""
    _require(cfd, HalfSpaceFree, "halfspace_density")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0.0) or np.any(y < 0.0):
        raise ValueError("halfspace_density requires x >= 0 and y >= 0")
    return (
        _free_rho_complex(cfd, x, y, t)
        - _free_rho_complex(cfd, x, -y, t)
        - _free_rho_complex(cfd, -x, y, t)
        + _free_rho_complex(cfd, -x, -y, t)
    )


def halfspace_diagonal(cfd: ClosedFormDensity, x, t):
    """Real diagonal of the half-space density (image cross terms combined)."""
    rho = halfspace_density(cfd, x, x, t)
    return rho.real


def _halfspace_upper(cfd, t):
    width = (
        cfd.params.sigma0
        if cfd.is_classical
        else float(sigma_t(cfd.regime, cfd.params, t))
    )
    center = abs(cfd.params.x0 + cfd.params.p0 * t / cfd.mass)
    return center + 12.0 * width


def halfspace_observables(cfd: ClosedFormDensity, t, abs_tol=1e-10):
    """Position expectation and dispersion by adaptive quadrature of the
    diagonal over [0, |center| + 12 widths]."""
    _require(cfd, HalfSpaceFree, "halfspace_observables")
    upper = _halfspace_upper(cfd, t)

    def diag(x):
        return float(halfspace_diagonal(cfd, x, t))

    trace = adaptive_quad(diag, 0.0, upper, abs_tol=abs_tol)
    x_mean = adaptive_quad(lambda x: x * diag(x), 0.0, upper, abs_tol=abs_tol) / trace
    x2_mean = adaptive_quad(lambda x: x * x * diag(x), 0.0, upper, abs_tol=abs_tol) / trace
    return x_mean, math.sqrt(max(x2_mean - x_mean**2, 0.0))


def halfspace_trace(cfd: ClosedFormDensity, t, abs_tol=1e-10):
    """Trace of the half-space density over [0, inf)."""
    upper = _halfspace_upper(cfd, t)
    return adaptive_quad(lambda x: float(halfspace_diagonal(cfd, x, t)), 0.0, upper, abs_tol=abs_tol)


# ----------------------------------------------------------------------
# uniform field (linear potential)
# ----------------------------------------------------------------------


def linear_pd_pcd(cfd: ClosedFormDensity, x, t):
    """Probability density and current of the uniform-field state (p0 = 0)."""
    _require(cfd, Linear, "linear_pd_pcd")
    x = np.asarray(x, dtype=float)
    p = cfd.params
    g = cfd.scenario.g
    m = cfd.mass
    center = p.x0 - 0.5 * g * t**2
    if cfd.is_classical:
        pd = np.exp(-((x - center) ** 2) / (2.0 * p.sigma0**2)) / (
            math.sqrt(2.0 * math.pi) * p.sigma0
        )
        return pd, -g * t * pd
    hs = cfd.hbar_eff
    width = sigma_t(cfd.regime, p, t)
    pd = np.exp(-((x - center) ** 2) / (2.0 * width**2)) / (
        math.sqrt(2.0 * math.pi) * width
    )
    lam = p.lam
    top = 2.0 * hs**2 * (1.0 + lam) * (x - p.x0) - g * (
        hs**2 * t**2 * (1.0 + lam) + 8.0 * m**2 * p.sigma0**4 * (1.0 - lam)
    )
    bot = 2.0 * (hs**2 * t**2 * (1.0 + lam) + 4.0 * m**2 * p.sigma0**4 * (1.0 - lam))
    return pd, t * top / bot * pd


def linear_trajectory(cfd: ClosedFormDensity, x0_init, t):
    """Trajectories in the uniform field: dressed (scaled) or free fall."""
    _require(cfd, Linear, "linear_trajectory")
    x0_init = np.asarray(x0_init, dtype=float)
    g = cfd.scenario.g
    fall = -0.5 * g * np.asarray(t, dtype=float) ** 2
    if cfd.is_classical:
        out = x0_init + fall
    else:
        width = sigma_t(cfd.regime, cfd.params, t)
        out = cfd.params.x0 + fall + (x0_init - cfd.params.x0) * width / cfd.params.sigma0
    return float(out) if np.ndim(out) == 0 else out


# ----------------------------------------------------------------------
# harmonic trap
# ----------------------------------------------------------------------


def harmonic_sigma_t(cfd: ClosedFormDensity, t):
    """rms width under the harmonic trap (classical kind: sigma0 |cos wt|)."""
    _require(cfd, Harmonic, "harmonic_sigma_t")
    omega = cfd.scenario.omega
    t = np.asarray(t, dtype=float)
    c = np.cos(omega * t)
    if cfd.is_classical:
        out = cfd.params.sigma0 * np.abs(c)
    else:
        p = cfd.params
        hs = cfd.hbar_eff
        s = np.sin(omega * t)
        out = p.sigma0 * np.sqrt(
            c**2
            + _lam_ratio(p) * hs**2 * s**2 / (4.0 * cfd.mass**2 * p.sigma0**4 * omega**2)
        )
    return float(out) if np.ndim(out) == 0 else out


def harmonic_pd_pcd(cfd: ClosedFormDensity, x, t):
    """Probability density and current under the harmonic trap (p0 = 0).

    The scaled forms are regular at every t; the classical ones focus to a
    point whenever cos(wt) = 0 and raise on that singular set.
    """
    _require(cfd, Harmonic, "harmonic_pd_pcd")
    x = np.asarray(x, dtype=float)
    p = cfd.params
    omega = cfd.scenario.omega
    m = cfd.mass
    c = math.cos(omega * t)
    s = math.sin(omega * t)
    center = p.x0 * c
    if cfd.is_classical:
        if abs(c) < SIN_SINGULAR_TOL:
            raise SingularTimeError(
                f"classical harmonic density focuses at cos(wt) = 0 (t = {t!r})"
            )
        width = p.sigma0 * abs(c)
        pd = np.exp(-((x - center) ** 2) / (2.0 * width**2)) / (
            math.sqrt(2.0 * math.pi) * width
        )
        return pd, -omega * math.tan(omega * t) * x * pd
    width = harmonic_sigma_t(cfd, t)
    pd = np.exp(-((x - center) ** 2) / (2.0 * width**2)) / (
        math.sqrt(2.0 * math.pi) * width
    )
    hs = cfd.hbar_eff
    lam = p.lam
    top = 2.0 * omega * s * (
        hs**2 * (1.0 + lam) * (x * c - p.x0)
        - 4.0 * x * (1.0 - lam) * m**2 * p.sigma0**4 * omega**2 * c
    )
    bot = (
        2.0 * hs**2 * (1.0 + lam) * s**2
        + 8.0 * (1.0 - lam) * m**2 * omega**2 * p.sigma0**4 * c**2
    )
    return pd, top / bot * pd


def harmonic_trajectory(cfd: ClosedFormDensity, x0_init, t):
    """Trajectories in the trap: dressed (scaled) or x0 |cos wt| (classical)."""
    _require(cfd, Harmonic, "harmonic_trajectory")
    x0_init = np.asarray(x0_init, dtype=float)
    omega = cfd.scenario.omega
    c = np.cos(omega * np.asarray(t, dtype=float))
    if cfd.is_classical:
        out = x0_init * np.abs(c)
    else:
        width = harmonic_sigma_t(cfd, t)
        out = cfd.params.x0 * c + (x0_init - cfd.params.x0) * width / cfd.params.sigma0
    return float(out) if np.ndim(out) == 0 else out


# ----------------------------------------------------------------------
# full density matrices (generic complex-Gaussian propagation)
# ----------------------------------------------------------------------


def _initial_rho(cfd, x, y):
    p = cfd.params
    lam = p.lam
    quad_part = (
        (x**2 + y**2) / (2.0 * (1.0 - lam))
        - lam * x * y / (1.0 - lam)
        - p.x0 * (x + y)
        + p.x0**2
    )
    return (
        np.exp(-quad_part / (2.0 * p.sigma0**2) + 1j * p.p0 * (x - y) / cfd.hbar_eff)
        / (math.sqrt(2.0 * math.pi) * p.sigma0)
    )


def _propagator_coeffs(scenario, m, t):
    """Quadratic-propagator coefficients (alpha, gamma, delta, |f|).

    The kernel is sqrt(m/(2 pi i hbar f)) exp[(i/2hbar)(alpha(x^2+x'^2)
    - 2 gamma x x') + (i/hbar) delta (x + x')]; the x'-independent cubic
    phases cancel between the two propagators of a density matrix.
    """
    if isinstance(scenario, Free):
        return m / t, m / t, 0.0, abs(t)
    if isinstance(scenario, Linear):
        return m / t, m / t, -0.5 * m * scenario.g * t, abs(t)
    if isinstance(scenario, Harmonic):
        w = scenario.omega
        s = math.sin(w * t)
        if abs(s) < SIN_SINGULAR_TOL:
            raise SingularTimeError(
                f"harmonic propagator is singular at sin(wt) = 0 (t = {t!r})"
            )
        return m * w * math.cos(w * t) / s, m * w / s, 0.0, abs(s) / w
    raise ScenarioError(f"no quadratic propagator for {type(scenario).__name__}")


def _evolved_rho(cfd, x, y, t):
    """Exact complex-Gaussian integral of propagator x initial state."""
    p = cfd.params
    hs = cfd.hbar_eff
    m = cfd.mass
    alpha, gamma, delta, f_abs = _propagator_coeffs(cfd.scenario, m, t)
    lam = p.lam
    c_diag = 1.0 / (2.0 * p.sigma0**2 * (1.0 - lam))
    c_cross = lam / (2.0 * p.sigma0**2 * (1.0 - lam))

    m11 = c_diag - 1j * alpha / hs
    m22 = c_diag + 1j * alpha / hs
    m12 = -c_cross
    b1 = p.x0 / (2.0 * p.sigma0**2) + 1j * (p.p0 + delta - gamma * x) / hs
    b2 = p.x0 / (2.0 * p.sigma0**2) - 1j * (p.p0 + delta - gamma * y) / hs

    a2 = m22 - m12**2 / m11
    bb = b2 - b1 * m12 / m11
    gauss2d = (2.0 * math.pi / (np.sqrt(m11) * np.sqrt(a2))) * np.exp(
        b1**2 / (2.0 * m11) + bb**2 / (2.0 * a2)
    )
    pref = (
        m
        / (2.0 * math.pi * hs * f_abs)
        * np.exp(1j * (0.5 * alpha * (x**2 - y**2) + delta * (x - y)) / hs)
    )
    norm0 = math.exp(-p.x0**2 / (2.0 * p.sigma0**2)) / (math.sqrt(2.0 * math.pi) * p.sigma0)
    return pref * norm0 * gauss2d


def _classical_linear_rho(cfd, x, y, t):
    p = cfd.params
    lam = p.lam
    g = cfd.scenario.g
    quad_part = (
        2.0 * (x**2 + y**2)
        - 4.0 * lam * x * y
        - 4.0 * (1.0 - lam) * p.x0 * (x + y - p.x0)
        + g * t**2 * (1.0 - lam) * (2.0 * (x + y) - 4.0 * p.x0 + g * t**2)
    )
    amp = np.exp(-quad_part / (8.0 * (1.0 - lam) * p.sigma0**2)) / (
        math.sqrt(2.0 * math.pi) * p.sigma0
    )
    phase = -cfd.mass * g * t * (x - y)
    return amp * np.exp(1j * phase / cfd.hbar)


def _classical_harmonic_rho(cfd, x, y, t):
    p = cfd.params
    lam = p.lam
    omega = cfd.scenario.omega
    c = math.cos(omega * t)
    if abs(c) < SIN_SINGULAR_TOL:
        raise SingularTimeError(
            f"classical harmonic density matrix is singular at cos(wt) = 0 (t = {t!r})"
        )
    quad_part = (
        x**2
        + y**2
        - 2.0 * lam * x * y
        - 2.0 * p.x0 * (1.0 - lam) * c * (x + y)
        + 2.0 * p.x0**2 * (1.0 - lam) * c**2
    )
    amp = np.exp(-quad_part / (4.0 * (1.0 - lam) * p.sigma0**2 * c**2)) / (
        math.sqrt(2.0 * math.pi) * p.sigma0 * abs(c)
    )
    phase = -0.5 * cfd.mass * omega * (x**2 - y**2) * math.tan(omega * t)
    return amp * np.exp(1j * phase / cfd.hbar)


def density_matrix(cfd: ClosedFormDensity, x, y, t):
    """Complex density matrix rho(x, y, t) for any scenario and kind."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if isinstance(cfd.scenario, HalfSpaceFree):
        return halfspace_density(cfd, x, y, t)
    if t == 0.0:
        return _initial_rho(cfd, x, y)
    if isinstance(cfd.scenario, Free):
        return _free_rho_complex(cfd, x, y, t)
    if cfd.is_classical:
        if isinstance(cfd.scenario, Linear):
            return _classical_linear_rho(cfd, x, y, t)
        return _classical_harmonic_rho(cfd, x, y, t)
    return _evolved_rho(cfd, x, y, t)


# ----------------------------------------------------------------------
# trajectory bundles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TrajectoryBundle:
    x0_init: np.ndarray
    times: np.ndarray
    positions: np.ndarray  # shape (len(x0_init), len(times))


def trajectory_bundle(cfd: ClosedFormDensity, x0_init, times) -> TrajectoryBundle:
    """Evaluate the scenario's trajectory family on a (x0, t) grid."""
    x0_init = np.atleast_1d(np.asarray(x0_init, dtype=float))
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if isinstance(cfd.scenario, Free):
        traj = scaled_trajectory_free
    elif isinstance(cfd.scenario, Linear):
        traj = linear_trajectory
    elif isinstance(cfd.scenario, Harmonic):
        traj = harmonic_trajectory
    else:
        raise ScenarioError("no closed trajectory family for the half-space scenario")
    pos = np.empty((x0_init.size, times.size))
    for j, t in enumerate(times):
        pos[:, j] = traj(cfd, x0_init, float(t))
    return TrajectoryBundle(x0_init=x0_init, times=times, positions=pos)
