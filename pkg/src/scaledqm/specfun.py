"""Special functions backing the closed forms: Airy Ai, Ai', the negative
real zeros of Ai, erf, and an overflow-safe fused erfi.

Ai and Ai' are built from scratch: a Maclaurin series evaluated in
compensated double-double arithmetic on the central band, matched to the
standard asymptotic expansions outside it.  The double-double series is
required because the plain double series loses ~e^(2 zeta) digits to
cancellation on the positive axis; the compensated version keeps ~31 digits
and hands over to the asymptotics where their optimal truncation error is
below 1e-13.  The same trick powers the Dawson function used by erfi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# ----------------------------------------------------------------------
# double-double primitives (vectorised; a dd number is a (hi, lo) pair)
# ----------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a, b):
    # requires |a| >= |b| elementwise
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    lo = a - hi
    return hi, lo


def _two_prod(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(x, y):
    s1, s2 = _two_sum(x[0], y[0])
    t1, t2 = _two_sum(x[1], y[1])
    s2 = s2 + t1
    s1, s2 = _quick_two_sum(s1, s2)
    s2 = s2 + t2
    return _quick_two_sum(s1, s2)


def _dd_sub(x, y):
    return _dd_add(x, (-y[0], -y[1]))


def _dd_mul(x, y):
    p1, p2 = _two_prod(x[0], y[0])
    p2 = p2 + x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p1, p2)


def _dd_mul_d(x, d):
    p1, p2 = _two_prod(x[0], d)
    p2 = p2 + x[1] * d
    return _quick_two_sum(p1, p2)


def _dd_div_d(x, d):
    q1 = x[0] / d
    p1, p2 = _two_prod(q1, d)
    s, e = _two_sum(x[0], -p1)
    e = e + x[1] - p2
    q2 = (s + e) / d
    return _quick_two_sum(q1, q2)


# dd constants: Ai(0) and -Ai'(0), i.e. 3^(-2/3)/Gamma(2/3) and 3^(-1/3)/Gamma(1/3)
_AI_ZERO = (0.3550280538878172, 2.05233632436212e-17)
_NEG_AIP_ZERO = (0.2588194037928068, -2.522243111610832e-17)
_TWO_PI = (6.283185307179586, 2.4492935982947064e-16)

_SERIES_CUT = 9.0  # |x| below: dd Maclaurin series; above: asymptotics
_SERIES_TERMS = 72
_ROOT_RESIDUAL_TOL = 1e-12


def _airy_series(x):
    """Maclaurin Ai, Ai' on |x| <= ~9.5, evaluated in double-double."""
    zero = np.zeros_like(x)
    x3 = _dd_mul(_two_prod(x, x), (x, zero))

    f = (np.ones_like(x), zero.copy())      # sum of the '1'-type series
    g = (x.copy(), zero.copy())             # sum of the 'x'-type series
    gp = (np.ones_like(x), zero.copy())     # d/dx of g
    u = f
    v = g
    r = gp
    q = _dd_div_d(_two_prod(x, x), 2.0)     # first term of f', x^2/2
    fp = q

    for k in range(1, _SERIES_TERMS + 1):
        tk = 3.0 * k
        u = _dd_div_d(_dd_mul(u, x3), tk * (tk - 1.0))
        f = _dd_add(f, u)
        v = _dd_div_d(_dd_mul(v, x3), (tk + 1.0) * tk)
        g = _dd_add(g, v)
        r = _dd_div_d(_dd_mul(r, x3), (tk - 2.0) * tk)
        gp = _dd_add(gp, r)
        if k >= 2:
            q = _dd_div_d(_dd_mul_d(_dd_mul(q, x3), float(k)), (k - 1.0) * tk * (tk - 1.0))
            fp = _dd_add(fp, q)

    ai = _dd_sub(_dd_mul(_AI_ZERO, f), _dd_mul(_NEG_AIP_ZERO, g))
    aip = _dd_sub(_dd_mul(_AI_ZERO, fp), _dd_mul(_NEG_AIP_ZERO, gp))
    return ai[0] + ai[1], aip[0] + aip[1]


def _asymptotic_uv(k_max):
    u = np.empty(k_max + 1)
    v = np.empty(k_max + 1)
    u[0] = v[0] = 1.0
    for k in range(1, k_max + 1):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        v[k] = u[k] * (6 * k + 1) / (1.0 - 6 * k)
    return u, v


_UK, _VK = _asymptotic_uv(48)


def _alternating_tail(inv_zeta, coeffs):
    """Sum (-1)^k c_k / zeta^k with per-element stop at the smallest term."""
    total = np.full_like(inv_zeta, coeffs[0])
    term = np.full_like(inv_zeta, coeffs[0])
    active = np.ones_like(inv_zeta, dtype=bool)
    sign = 1.0
    for k in range(1, len(coeffs)):
        nxt = term * inv_zeta * (coeffs[k] / coeffs[k - 1])
        grew = np.abs(nxt) >= np.abs(term)
        active = active & ~grew
        sign = -sign
        total = np.where(active, total + sign * nxt, total)
        term = np.where(active, nxt, term)
    return total


def _dd_osc_phase(y):
    """zeta - pi/4 reduced mod 2pi in double-double, zeta = (2/3) y^(3/2).

    Plain-double zeta loses ~zeta*eps radians for the deep negative axis
    (roots beyond |x| ~ 1e3); the dd reduction keeps the phase to ~1e-28.
    """
    s = np.sqrt(y)
    # one dd Newton correction of the square root
    p, e = _two_prod(s, s)
    s_dd = (s, ((y - p) - e) / (2.0 * s))
    zeta = _dd_mul_d(_dd_mul(s_dd, (y, np.zeros_like(y))), 2.0 / 3.0)
    n = np.round((zeta[0] - 0.7853981633974483) / _TWO_PI[0])
    red = _dd_sub(zeta, _dd_mul_d(_TWO_PI, n))
    theta = _dd_add(red, (-0.7853981633974483, -3.061616997868383e-17))
    return theta[0] + theta[1], zeta[0]


def _airy_asym_pos(x):
    """Decaying asymptotic branch, x >= ~9."""
    zeta = 2.0 / 3.0 * x * np.sqrt(x)
    inv = 1.0 / zeta
    s_ai = _alternating_tail(inv, _UK)
    s_aip = _alternating_tail(inv, _VK)
    root4 = x**0.25
    with np.errstate(under="ignore"):
        damp = np.exp(-zeta)
    pref = damp / (2.0 * math.sqrt(math.pi))
    return pref * s_ai / root4, -pref * root4 * s_aip


def _airy_asym_neg(x):
    """Oscillatory asymptotic branch, x <= ~-9."""
    y = -x
    theta, zeta = _dd_osc_phase(y)
    inv2 = 1.0 / (zeta * zeta)
    even_u = _alternating_tail(inv2, _UK[0::2])
    odd_u = _alternating_tail(inv2, _UK[1::2]) / zeta
    even_v = _alternating_tail(inv2, _VK[0::2])
    odd_v = _alternating_tail(inv2, _VK[1::2]) / zeta
    c = np.cos(theta)
    s = np.sin(theta)
    root4 = y**0.25
    rpi = math.sqrt(math.pi)
    ai = (c * even_u + s * odd_u) / (rpi * root4)
    aip = (root4 / rpi) * (s * even_v - c * odd_v)
    return ai, aip


def _airy_both(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("airy_ai: input must be finite")
    flat = x.ravel()
    ai = np.empty_like(flat)
    aip = np.empty_like(flat)
    mid = np.abs(flat) <= _SERIES_CUT
    pos = flat > _SERIES_CUT
    neg = flat < -_SERIES_CUT
    if mid.any():
        ai[mid], aip[mid] = _airy_series(flat[mid])
    if pos.any():
        ai[pos], aip[pos] = _airy_asym_pos(flat[pos])
    if neg.any():
        ai[neg], aip[neg] = _airy_asym_neg(flat[neg])
    ai = ai.reshape(x.shape)
    aip = aip.reshape(x.shape)
    return ai, aip


def airy_ai(x):
    """Airy function Ai(x) for real x (scalar or array).

    Accurate to ~1e-13 relative (envelope-relative on the oscillatory side);
    underflows gracefully to 0 for large positive x.
    """
    scalar = np.isscalar(x) or np.ndim(x) == 0
    ai, _ = _airy_both(x)
    return float(ai) if scalar else ai


def airy_ai_prime(x):
    """Derivative Ai'(x) for real x (scalar or array)."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    _, aip = _airy_both(x)
    return float(aip) if scalar else aip


def airy_ai_and_prime(x):
    """Both Ai(x) and Ai'(x) in one evaluation pass."""
    return _airy_both(x)


@dataclass(frozen=True)
class AiryRootTable:
    """Ordered negative zeros R_1 > R_2 > ... of Ai, each with |Ai(R_n)| < 1e-12."""

    roots: np.ndarray = field(repr=False)

    def __post_init__(self):
        roots = np.asarray(self.roots, dtype=float)
        object.__setattr__(self, "roots", roots)
        if roots.size == 0:
            raise ValueError("empty root table")
        if not np.all(roots < 0.0) or not np.all(np.diff(roots) < 0.0):
            raise ValueError("Airy roots must be negative and strictly decreasing")
        residual = np.abs(airy_ai(roots))
        if residual.max() >= _ROOT_RESIDUAL_TOL:
            raise ValueError(
                f"root refinement did not converge: max |Ai(R_n)| = {residual.max():.3e}"
            )

    @property
    def count(self) -> int:
        return self.roots.size

    def __len__(self) -> int:
        return self.roots.size


def airy_root_seeds(n):
    """Asymptotic seeds -[3 pi (4n - 1)/8]^(2/3) for the n-th roots."""
    n = np.asarray(n, dtype=float)
    return -((3.0 * math.pi * (4.0 * n - 1.0) / 8.0) ** (2.0 / 3.0))


def airy_roots(n_max: int) -> AiryRootTable:
    """First ``n_max`` negative zeros of Ai via asymptotic seeds plus Newton."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1; got {n_max!r}")
    n = np.arange(1, n_max + 1)
    r = airy_root_seeds(n)
    # half the local root spacing, as a safeguard clamp on Newton steps
    clamp = 0.5 * math.pi / np.sqrt(np.abs(r))
    for _ in range(8):
        ai, aip = _airy_both(r)
        step = ai / aip
        step = np.clip(step, -clamp, clamp)
        r = r - step
        if np.max(np.abs(step)) < 1e-15 * np.max(np.abs(r)):
            break
    return AiryRootTable(roots=r)


# ----------------------------------------------------------------------
# erf / Dawson / fused erfi
# ----------------------------------------------------------------------

_erf_ufunc = np.frompyfunc(math.erf, 1, 1)

_DAWSON_CUT = 6.0
_DAWSON_TERMS = 170


def erf(x):
    """Error function, elementwise."""
    if np.isscalar(x) or np.ndim(x) == 0:
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError("erf: input must be finite")
        return math.erf(xf)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("erf: input must be finite")
    return _erf_ufunc(x).astype(float)


def _dawson_series(x):
    """dd Maclaurin sum of D(x) = sum (-2)^k x^(2k+1)/(2k+1)!!, |x| <= ~6."""
    zero = np.zeros_like(x)
    m2x2 = _dd_mul_d(_two_prod(x, x), -2.0)
    term = (x.copy(), zero.copy())
    total = term
    for k in range(1, _DAWSON_TERMS + 1):
        term = _dd_div_d(_dd_mul(term, m2x2), 2.0 * k + 1.0)
        total = _dd_add(total, term)
    return total[0] + total[1]


def _dawson_asym(x):
    """Asymptotic D(x) ~ (1/2x) sum (2k-1)!!/(2x^2)^k, x >= ~6."""
    inv2x2 = 1.0 / (2.0 * x * x)
    term = np.ones_like(x)
    total = np.ones_like(x)
    active = np.ones_like(x, dtype=bool)
    for k in range(1, 40):
        nxt = term * (2.0 * k - 1.0) * inv2x2
        grew = np.abs(nxt) >= np.abs(term)
        active = active & ~grew
        total = np.where(active, total + nxt, total)
        term = np.where(active, nxt, term)
    return total / (2.0 * x)


def dawson(x):
    """Dawson integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("dawson: input must be finite")
    flat = x.ravel()
    out = np.empty_like(flat)
    ax = np.abs(flat)
    small = ax <= _DAWSON_CUT
    if small.any():
        out[small] = _dawson_series(flat[small])
    big = ~small
    if big.any():
        out[big] = np.sign(flat[big]) * _dawson_asym(ax[big])
    out = out.reshape(x.shape)
    return float(out) if scalar else out


def erfi_scaled(x, log_prefactor):
    """exp(log_prefactor) * erfi(x) without intermediate overflow.

    erfi(x) = 2 exp(x^2) D(x) / sqrt(pi), so the product is assembled in the
    log domain: sign(x) * exp(log_prefactor + x^2 + log(2 D(|x|)/sqrt(pi))).
    """
    scalar = (np.isscalar(x) or np.ndim(x) == 0) and (
        np.isscalar(log_prefactor) or np.ndim(log_prefactor) == 0
    )
    x, log_prefactor = np.broadcast_arrays(
        np.atleast_1d(np.asarray(x, dtype=float)),
        np.atleast_1d(np.asarray(log_prefactor, dtype=float)),
    )
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(log_prefactor)):
        raise ValueError("erfi_scaled: inputs must be finite")
    ax = np.abs(x)
    d = np.atleast_1d(dawson(ax))
    out = np.zeros_like(ax)
    nz = ax > 0.0
    with np.errstate(under="ignore"):
        out[nz] = np.sign(x[nz]) * np.exp(
            log_prefactor[nz] + ax[nz] ** 2 + np.log(2.0 * d[nz] / math.sqrt(math.pi))
        )
    return float(out[0]) if scalar else out
