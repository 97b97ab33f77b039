"""Quadrature helpers: adaptive Gauss-Kronrod wrapper and composite
Gauss-Legendre rules for the fixed deterministic integrals."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError

DEFAULT_ABS_TOL = 1e-10


def adaptive_quad(f, a, b, abs_tol=DEFAULT_ABS_TOL, limit=200):
    """Adaptive quadrature of ``f`` over [a, b] to absolute tolerance.

    Raises :class:`QuadratureError` (carrying the achieved error estimate)
    when the integrator cannot reach the requested tolerance.
    """
    value, err = quad(f, a, b, epsabs=abs_tol, epsrel=0.0, limit=limit)
    if err > 50.0 * abs_tol and err > 1e-8 * max(1.0, abs(value)):
        raise QuadratureError(
            f"adaptive quadrature reached abs error {err:.3e} "
            f"(requested {abs_tol:.3e}) on [{a}, {b}]",
            achieved=err,
        )
    return value


@lru_cache(maxsize=32)
def _base_rule(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def composite_gauss(a: float, b: float, n_panels: int, order: int = 16):
    """Composite Gauss-Legendre nodes and weights on [a, b].

    Deterministic fixed rule used wherever repeated integrals on one grid
    are needed (spectral coefficients, time series of moments).
    """
    base_x, base_w = _base_rule(order)
    edges = np.linspace(a, b, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    return nodes, weights
