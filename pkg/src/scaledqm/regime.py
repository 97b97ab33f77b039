"""Transition parameter, scaled constants and the dimensionless unit systems.

The degree of quantumness ``epsilon`` lives in (0, 1]: ``epsilon = 1`` is
standard quantum mechanics and ``epsilon -> 0`` approaches classical motion.
The strictly classical point is a singular limit and is represented by
dedicated closed forms elsewhere, never by ``epsilon = 0`` here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Regime:
    """A dynamical regime: transition parameter plus physical constants.

    Parameters
    ----------
    epsilon : float
        Degree of quantumness, 0 < epsilon <= 1.
    hbar : float
        Planck constant in the chosen unit system (> 0).
    mass : float
        Particle mass (> 0).
    """

    epsilon: float
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 1.0):
            raise ValueError(
                f"epsilon must lie in (0, 1]; got {self.epsilon!r} "
                "(the strictly classical limit is handled by separate closed forms)"
            )
        if not self.hbar > 0.0:
            raise ValueError(f"hbar must be positive; got {self.hbar!r}")
        if not self.mass > 0.0:
            raise ValueError(f"mass must be positive; got {self.mass!r}")

    def scaled_hbar(self) -> float:
        """Effective Planck constant hbar * sqrt(epsilon)."""
        return self.hbar * math.sqrt(self.epsilon)


def scaled_hbar(regime: Regime) -> float:
    """Scaled Planck constant of a regime (hbar sqrt(eps))."""
    return regime.scaled_hbar()


def scale_coords(regime: Regime, x, t):
    """Map (x, t) to the stretched coordinates (X, T) = (x, t) / sqrt(eps)."""
    root = math.sqrt(regime.epsilon)
    return x / root, t / root


def unscale_coords(regime: Regime, x_scaled, t_scaled):
    """Inverse of :func:`scale_coords`."""
    root = math.sqrt(regime.epsilon)
    return x_scaled * root, t_scaled * root


def grav_bar_quantities(eps: float, t, z, sigma0, z0):
    """Bar quantities reducing the scaled gravitational bouncer to eps = 1.

    Returns ``(t_bar, z_bar, sigma0_bar, z0_bar)`` with time divided by
    eps**(1/6) and all lengths by eps**(1/3).
    """
    if not eps > 0.0:
        raise ValueError(f"eps must be positive; got {eps!r}")
    sixth = eps ** (1.0 / 6.0)
    third = eps ** (1.0 / 3.0)
    return t / sixth, z / third, sigma0 / third, z0 / third


@dataclass(frozen=True)
class GaussianMixedParams:
    """Initial Gaussian mixed-state parameters.

    ``lam`` is the impurity: 0 for a pure state, in [0, 1) for a mixed one.
    """

    x0: float
    sigma0: float
    p0: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if not self.sigma0 > 0.0:
            raise ValueError(f"sigma0 must be positive; got {self.sigma0!r}")
        if not (0.0 <= self.lam < 1.0):
            raise ValueError(f"impurity lam must lie in [0, 1); got {self.lam!r}")

    @property
    def is_pure(self) -> bool:
        return self.lam == 0.0

    def purity(self) -> float:
        """tr(rho^2) of the initial state, 1 - impurity."""
        return 1.0 - self.lam


@dataclass(frozen=True)
class GravUnits:
    """Natural units of the gravitational bouncer.

    length_unit = (hbar^2 / 2 m^2 g)^(1/3), time_unit = (2 hbar / m g^2)^(1/3),
    energy_unit = (m g^2 hbar^2 / 2)^(1/3).  energy_unit * time_unit == hbar.
    """

    g: float
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not self.g > 0.0:
            raise ValueError(f"g must be positive; got {self.g!r}")
        if not self.hbar > 0.0 or not self.mass > 0.0:
            raise ValueError("hbar and mass must be positive")

    @property
    def length_unit(self) -> float:
        return (self.hbar**2 / (2.0 * self.mass**2 * self.g)) ** (1.0 / 3.0)

    @property
    def time_unit(self) -> float:
        return (2.0 * self.hbar / (self.mass * self.g**2)) ** (1.0 / 3.0)

    @property
    def energy_unit(self) -> float:
        return (self.mass * self.g**2 * self.hbar**2 / 2.0) ** (1.0 / 3.0)


@dataclass(frozen=True)
class HarmUnits:
    """Natural units of the harmonic bouncer: length sqrt(hbar/2m w), time 2/w."""

    omega: float
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValueError(f"omega must be positive; got {self.omega!r}")
        if not self.hbar > 0.0 or not self.mass > 0.0:
            raise ValueError("hbar and mass must be positive")

    @property
    def length_unit(self) -> float:
        return math.sqrt(self.hbar / (2.0 * self.mass * self.omega))

    @property
    def time_unit(self) -> float:
        return 2.0 / self.omega
