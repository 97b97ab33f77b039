import math

import numpy as np
import pytest

from scaledqm import bouncer_grav as bg
from scaledqm import grid_oracle as go
from scaledqm.analytic import ClosedFormDensity, Free, Harmonic, Linear, position_pd
from scaledqm.errors import CflWarning, NumericsError
from scaledqm.regime import GaussianMixedParams, Regime


def gaussian(z, z0=0.0, s0=1.0):
    return (2.0 * math.pi * s0**2) ** (-0.25) * np.exp(-((z - z0) ** 2) / (4.0 * s0**2))


def test_grid_validation():
    with pytest.raises(ValueError):
        go.Grid1D(1.0, 0.0, 100)
    with pytest.raises(ValueError):
        go.Grid1D(0.0, 1.0, 2)
    grid = go.Grid1D.half_line(10.0, 101)
    assert grid.dz == pytest.approx(0.1)
    assert grid.z[0] == 0.0 and grid.z[-1] == 10.0
    full = go.Grid1D.full_line(5.0, 11)
    assert full.z[0] == -5.0 and full.boundary is go.Boundary.PADDED_FREE


def test_potential_values():
    z = np.array([0.0, 1.0, 2.0])
    assert np.array_equal(go.potential_values(Free(), z, 1.0), np.zeros(3))
    assert np.allclose(go.potential_values(Linear(2.0), z, 0.5), z)
    assert np.allclose(go.potential_values(Harmonic(2.0), z, 1.0), 2.0 * z**2)


def test_initial_observables():
    # the default grid density (n = 8192) keeps the centred-stencil p-moments
    # inside the stated tolerances
    grid = go.Grid1D.full_line(15.0, 8193)
    state = go.GridState.from_callable(grid, gaussian, Regime(1.0))
    obs = go.observables(state)
    assert obs.norm == pytest.approx(1.0, abs=1e-8)
    assert abs(obs.z_mean) < 1e-8
    assert abs(obs.p_mean) < 1e-10
    assert obs.dp == pytest.approx(0.5, abs=1e-6)     # hbar_s / (2 sigma0)
    assert obs.energy == pytest.approx(0.125, abs=1e-5)


def _free_l2_error(dz, dt, t_end=1.0, half_width=15.0):
    import warnings

    reg = Regime(1.0)
    n = int(round(2 * half_width / dz)) + 1
    grid = go.Grid1D.full_line(half_width, n)
    state = go.GridState.from_callable(grid, gaussian, reg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CflWarning)
        state = go.propagate(state, Free(), dt, int(round(t_end / dt)))
    cfd = ClosedFormDensity(Free(), GaussianMixedParams(0.0, 1.0), reg)
    pd = position_pd(cfd, grid.z, t_end)
    return math.sqrt(np.trapezoid((np.abs(state.psi) ** 2 - pd) ** 2, dx=grid.dz))


def test_free_propagation_and_convergence_order():
    coarse = _free_l2_error(0.04, 8e-4)
    fine = _free_l2_error(0.02, 4e-4)
    assert coarse < 1e-4
    assert coarse / fine == pytest.approx(4.0, abs=0.7)


def test_energy_conserved_under_harmonic_trap():
    reg = Regime(1.0)
    grid = go.Grid1D.full_line(18.0, 4001)
    state = go.GridState.from_callable(grid, lambda z: gaussian(z, 3.0), reg)
    pot = Harmonic(0.5)
    e0 = go.observables(state, pot).energy
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CflWarning)
        state = go.propagate(state, pot, 5e-4, 4000)
    e1 = go.observables(state, pot).energy
    assert abs(e1 - e0) / abs(e0) < 1e-8
    assert go.observables(state, pot).norm == pytest.approx(1.0, abs=1e-9)


def test_dirichlet_wall_pins_the_origin():
    reg = Regime(1.0, mass=0.5)
    grid = go.Grid1D.half_line(20.0, 2001)
    state = go.GridState.from_callable(grid, lambda z: gaussian(z, 7.0), reg)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CflWarning)
        state = go.propagate(state, Linear(2.0), 1e-3, 3000)
    assert state.psi[0] == 0.0
    assert go.observables(state).norm == pytest.approx(1.0, abs=1e-6)


def test_cfl_warning_threshold():
    reg = Regime(1.0)
    grid = go.Grid1D.full_line(10.0, 501)
    state = go.GridState.from_callable(grid, gaussian, reg)
    with pytest.warns(CflWarning):
        go.propagate(state, Free(), 1.0, 1)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("error", CflWarning)
        go.propagate(state, Free(), 1e-3, 1)   # below threshold: no warning


def test_propagate_rejects_bad_arguments():
    grid = go.Grid1D.full_line(10.0, 501)
    state = go.GridState.from_callable(grid, gaussian, Regime(1.0))
    with pytest.raises(ValueError):
        go.propagate(state, Free(), -1.0, 10)
    with pytest.raises(ValueError):
        go.propagate(state, Free(), 1e-3, -1)


def test_non_finite_amplitudes_raise():
    grid = go.Grid1D.full_line(10.0, 501)
    psi = gaussian(grid.z).astype(complex)
    psi[100] = np.nan
    state = go.GridState(grid=grid, psi=psi, t=0.0, regime=Regime(1.0))
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CflWarning)
        with pytest.raises(NumericsError):
            go.propagate(state, Free(), 1e-3, 5)


def test_boundary_derivative_zero_state():
    grid = go.Grid1D.half_line(10.0, 2001)
    state = go.GridState(grid=grid, psi=np.zeros(2001, dtype=complex), t=0.0,
                         regime=Regime(1.0))
    assert go.boundary_derivative(state) == 0.0


def test_boundary_derivative_on_exact_eigenstate():
    # grav units: the eigenfunction slope at the wall is beta^(3/2) = 1
    reg = Regime(1.0, mass=0.5)
    grid = go.Grid1D.half_line(14.0, 14001)
    _, u2 = bg.scaled_eigensystem(1.0, 2)
    state = go.GridState(grid=grid, psi=u2(grid.z).astype(complex), t=0.0, regime=reg)
    assert go.boundary_derivative(state) == pytest.approx(1.0, abs=1e-5)


def test_boundary_derivative_warns_on_coarse_grid():
    reg = Regime(1.0, mass=0.5)
    grid = go.Grid1D.half_line(14.0, 41)
    _, u5 = bg.scaled_eigensystem(1.0, 5)
    state = go.GridState(grid=grid, psi=u5(grid.z).astype(complex), t=0.0, regime=reg)
    with pytest.warns(UserWarning):
        go.boundary_derivative(state)


def test_boundary_derivative_requires_half_line():
    grid = go.Grid1D.full_line(10.0, 101)
    state = go.GridState(grid=grid, psi=np.zeros(101, complex), t=0.0, regime=Regime(1.0))
    with pytest.raises(ValueError):
        go.boundary_derivative(state)
