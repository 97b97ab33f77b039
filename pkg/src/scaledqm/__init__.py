"""Scaled quantum mechanics toolkit: closed-form quantum-to-classical
transition dynamics for conservative systems, spectral and image-method
bouncing-ball solvers, and an independent grid PDE oracle."""

from .regime import (
    GaussianMixedParams,
    GravUnits,
    HarmUnits,
    Regime,
    grav_bar_quantities,
    scale_coords,
    scaled_hbar,
    unscale_coords,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianMixedParams",
    "GravUnits",
    "HarmUnits",
    "Regime",
    "grav_bar_quantities",
    "scale_coords",
    "scaled_hbar",
    "unscale_coords",
    "__version__",
]
