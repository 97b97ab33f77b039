import math

import numpy as np
import pytest

from scaledqm.regime import (
    GaussianMixedParams,
    GravUnits,
    HarmUnits,
    Regime,
    grav_bar_quantities,
    scale_coords,
    scaled_hbar,
    unscale_coords,
)


def test_scaled_hbar_values():
    assert scaled_hbar(Regime(1.0, hbar=1.0)) == 1.0
    assert scaled_hbar(Regime(0.25, hbar=1.0)) == 0.5
    assert scaled_hbar(Regime(0.5, hbar=1.054e-34)) == pytest.approx(
        1.054e-34 * math.sqrt(0.5), rel=1e-15
    )


def test_scaled_hbar_monotone_in_eps():
    eps = np.linspace(0.001, 1.0, 200)
    vals = [Regime(e).scaled_hbar() for e in eps]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_scale_coords_examples():
    assert scale_coords(Regime(1.0), 3.0, 2.0) == (3.0, 2.0)
    assert scale_coords(Regime(0.25), 3.0, 2.0) == (6.0, 4.0)
    X, T = scale_coords(Regime(0.01), 1.0, 1.0)
    assert (X, T) == pytest.approx((10.0, 10.0), rel=1e-14)


def test_scale_roundtrip():
    for eps in (1e-8, 0.04, 0.37, 1.0):
        reg = Regime(eps)
        for x, t in ((-7.0, 0.0), (0.3, 5.0), (1e4, 2e-3)):
            xx, tt = unscale_coords(reg, *scale_coords(reg, x, t))
            assert xx == pytest.approx(x, rel=1e-14)
            assert tt == pytest.approx(t, rel=1e-14)


def test_grav_bar_quantities():
    assert grav_bar_quantities(1.0, 5.0, 2.0, 1.0, 5.0) == (5.0, 2.0, 1.0, 5.0)
    _, z_bar, _, _ = grav_bar_quantities(0.001, 0.0, 1.0, 1.0, 1.0)
    assert z_bar == pytest.approx(10.0, rel=1e-13)
    t_bar, _, _, _ = grav_bar_quantities(1e-6, 1.0, 0.0, 1.0, 1.0)
    assert t_bar == pytest.approx(10.0, rel=1e-13)
    with pytest.raises(ValueError):
        grav_bar_quantities(0.0, 1.0, 1.0, 1.0, 1.0)


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.0001, float("nan")])
def test_regime_rejects_bad_epsilon(bad):
    with pytest.raises(ValueError):
        Regime(bad)


def test_regime_rejects_bad_constants():
    with pytest.raises(ValueError):
        Regime(0.5, hbar=0.0)
    with pytest.raises(ValueError):
        Regime(0.5, mass=-1.0)


def test_regime_immutable():
    reg = Regime(0.5)
    with pytest.raises(AttributeError):
        reg.epsilon = 0.7


def test_params_validation():
    p = GaussianMixedParams(x0=5.0, sigma0=1.0, p0=-1.0, lam=0.7)
    assert not p.is_pure and p.purity() == pytest.approx(0.3)
    assert GaussianMixedParams(0.0, 1.0).is_pure
    with pytest.raises(ValueError):
        GaussianMixedParams(0.0, 0.0)
    with pytest.raises(ValueError):
        GaussianMixedParams(0.0, 1.0, lam=1.0)
    with pytest.raises(ValueError):
        GaussianMixedParams(0.0, 1.0, lam=-0.2)


def test_grav_units():
    u = GravUnits(g=9.81, hbar=1.054e-34, mass=1.675e-27)
    assert u.length_unit > 0 and u.time_unit > 0 and u.energy_unit > 0
    # energy * time must carry action
    assert u.energy_unit * u.time_unit == pytest.approx(u.hbar, rel=1e-12)
    with pytest.raises(ValueError):
        GravUnits(g=0.0)


def test_harm_units():
    u = HarmUnits(omega=0.5)
    assert u.length_unit == pytest.approx(1.0)
    assert u.time_unit == pytest.approx(4.0)
    with pytest.raises(ValueError):
        HarmUnits(omega=-1.0)
