"""Special-function tests.

The expected values below were produced by the independent oracles named
next to them (truncated Maclaurin sums, bisection on that series, adaptive
quadrature of defining integrals) and then frozen; scipy.special serves as
an extra independent cross-check on dense grids.
"""

import math

import numpy as np
import pytest
from scipy import special as sps
from scipy.integrate import quad

from scaledqm.specfun import (
    AiryRootTable,
    airy_ai,
    airy_ai_and_prime,
    airy_ai_prime,
    airy_root_seeds,
    airy_roots,
    dawson,
    erf,
    erfi_scaled,
)

# Maclaurin-series oracle values: Ai(0) = 3^(-2/3)/Gamma(2/3),
# Ai'(0) = -3^(-1/3)/Gamma(1/3)
AI_AT_ZERO = 0.35502805388781723926
AIP_AT_ZERO = -0.25881940379280679841

# bisection oracle on the series, interval [-3, -2] resp. [-4.5, -3.5]
ROOT_1 = -2.3381074104597670385
ROOT_2 = -4.0879494441309706166
ROOT_10 = -12.828776752865757004
AIP_AT_ROOT_1 = 0.70121082272069139
DAWSON_10 = 0.050253847187598528033  # high-order series/asymptotic oracle
ERFI_10_SCALED = 0.056705394232887594  # exp(-100) erfi(10), Dawson-route oracle


def _series_ai(x, terms=60):
    """Plain-float Maclaurin Ai, trustworthy for |x| <= ~4.5 (mild cancellation)."""
    f_term, f_sum = 1.0, 1.0
    g_term, g_sum = x, x
    for k in range(1, terms + 1):
        f_term *= x**3 / ((3 * k) * (3 * k - 1))
        f_sum += f_term
        g_term *= x**3 / ((3 * k + 1) * (3 * k))
        g_sum += g_term
    return AI_AT_ZERO * f_sum + AIP_AT_ZERO * g_sum


def _bisect_series_root(lo, hi):
    flo = _series_ai(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = _series_ai(mid)
        if flo * fmid <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def test_airy_at_zero_against_series_oracle():
    assert airy_ai(0.0) == pytest.approx(AI_AT_ZERO, abs=5e-17)
    assert airy_ai_prime(0.0) == pytest.approx(AIP_AT_ZERO, abs=5e-17)


def test_airy_matches_own_series_oracle_on_central_band():
    # the plain-float oracle itself loses ~3 digits to cancellation by |x| ~ 3.5
    for x in (-4.0, -2.2, -1.0, -0.3, 0.4, 1.5, 2.5, 3.5):
        assert airy_ai(x) == pytest.approx(_series_ai(x), rel=1e-12, abs=1e-16)


def test_first_root_by_bisection_oracle():
    root = _bisect_series_root(-3.0, -2.0)
    assert root == pytest.approx(ROOT_1, abs=1e-13)
    assert abs(airy_ai(ROOT_1)) < 1e-12
    root2 = _bisect_series_root(-4.5, -3.5)
    assert root2 == pytest.approx(ROOT_2, abs=1e-13)


def test_airy_prime_at_first_root():
    assert airy_ai_prime(ROOT_1) == pytest.approx(AIP_AT_ROOT_1, rel=1e-12)


def test_airy_decays_monotonically_on_positive_axis():
    xs = np.linspace(10.0, 40.0, 121)
    vals = airy_ai(xs)
    assert np.all(vals > 0.0)
    assert np.all(np.diff(vals) < 0.0)


def test_airy_underflows_gracefully():
    assert airy_ai(1e5) == 0.0
    assert airy_ai_prime(1e5) == 0.0


def test_airy_rejects_non_finite():
    with pytest.raises(ValueError):
        airy_ai(float("nan"))
    with pytest.raises(ValueError):
        airy_ai_prime(np.array([1.0, float("inf")]))


def test_airy_against_scipy_dense_grid():
    xs = np.concatenate([np.linspace(-40.0, 40.0, 901), np.linspace(-9.5, 9.5, 301)])
    ai, aip = airy_ai_and_prime(xs)
    ref_ai, ref_aip, _, _ = sps.airy(xs)
    scale = np.maximum(np.abs(xs), 1.0)
    env = np.maximum(np.abs(ref_ai), scale**-0.25 / math.sqrt(math.pi))
    envp = np.maximum(np.abs(ref_aip), scale**0.25 / math.sqrt(math.pi))
    assert np.max(np.abs(ai - ref_ai) / env) < 5e-13
    assert np.max(np.abs(aip - ref_aip) / envp) < 5e-13
    # pointwise relative accuracy away from the zeros
    live = np.abs(ref_ai) > 0.05 * env
    assert np.max(np.abs(ai - ref_ai)[live] / np.abs(ref_ai)[live]) < 1e-12


def test_airy_ode_residual_by_finite_differences():
    # 8th-order central stencil keeps differencing noise below the target
    h = 0.02
    x = np.linspace(-10.0, 10.0, 501)
    offsets = np.arange(-4, 5)
    coef = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
    second = airy_ai(x[:, None] + offsets[None, :] * h) @ coef / h**2
    assert np.max(np.abs(second - x * airy_ai(x))) < 1e-10


def test_airy_roots_table():
    table = airy_roots(50)
    assert len(table) == 50
    assert table.roots[0] == pytest.approx(ROOT_1, abs=1e-13)
    assert table.roots[1] == pytest.approx(ROOT_2, abs=1e-13)
    assert np.all(np.diff(table.roots) < 0.0)
    assert np.max(np.abs(airy_ai(table.roots))) < 1e-12
    # consecutive roots bracket a zero of Ai' (slopes alternate in sign)
    slopes = airy_ai_prime(table.roots)
    assert np.all(slopes[:-1] * slopes[1:] < 0.0)


def test_root_seed_accuracy_at_n10():
    seed = airy_root_seeds(10)
    assert abs(seed - ROOT_10) < 1e-3
    assert airy_roots(10).roots[-1] == pytest.approx(ROOT_10, abs=1e-13)


def test_airy_roots_rejects_bad_count():
    with pytest.raises(ValueError):
        airy_roots(0)


def test_root_table_validates_contents():
    with pytest.raises(ValueError):
        AiryRootTable(roots=np.array([-2.0, -4.0]))  # not actual roots
    with pytest.raises(ValueError):
        AiryRootTable(roots=np.array([ROOT_2, ROOT_1]))  # wrong order


def test_erf_against_quadrature_oracle():
    val, _ = quad(lambda t: 2.0 / math.sqrt(math.pi) * math.exp(-t * t), 0.0, 1.0,
                  epsabs=1e-14)
    assert erf(1.0) == pytest.approx(val, abs=1e-15)
    assert erf(1.0) == pytest.approx(0.8427007929, abs=1e-10)
    assert erf(0.0) == 0.0


def test_erf_oddness():
    xs = np.linspace(0.05, 6.0, 40)
    assert np.max(np.abs(erf(xs) + erf(-xs))) < 1e-14


def test_erfi_scaled_values():
    assert erfi_scaled(0.0, 0.0) == 0.0
    assert erfi_scaled(10.0, -100.0) == pytest.approx(ERFI_10_SCALED, rel=1e-13)
    # oddness in the first argument
    xs = np.linspace(0.1, 8.0, 25)
    vals = erfi_scaled(xs, -(xs**2)) + erfi_scaled(-xs, -(xs**2))
    assert np.max(np.abs(vals)) < 1e-14


def test_erfi_scaled_matches_small_argument_series():
    # erfi(x) ~ (2/sqrt(pi)) (x + x^3/3 + x^5/10 + x^7/42) for small x
    for x in (1e-3, 1e-2, 0.1):
        series = 2.0 / math.sqrt(math.pi) * (x + x**3 / 3.0 + x**5 / 10.0 + x**7 / 42.0)
        assert erfi_scaled(x, 0.0) == pytest.approx(series, rel=1e-10)


def test_dawson_series_oracle():
    # defining-series oracle at small arguments
    for x in (0.2, 0.7, 1.3):
        term, total = x, x
        for k in range(1, 60):
            term *= -2.0 * x * x / (2.0 * k + 1.0)
            total += term
        assert dawson(x) == pytest.approx(total, rel=1e-14)
    assert dawson(10.0) == pytest.approx(DAWSON_10, rel=1e-13)
    assert dawson(-10.0) == pytest.approx(-DAWSON_10, rel=1e-13)


def test_dawson_against_scipy():
    xs = np.linspace(-12.0, 12.0, 241)
    assert np.max(np.abs(dawson(xs) - sps.dawsn(xs))) < 1e-15


def test_erfi_scaled_rejects_non_finite():
    with pytest.raises(ValueError):
        erfi_scaled(float("inf"), 0.0)
    with pytest.raises(ValueError):
        erfi_scaled(1.0, float("nan"))
