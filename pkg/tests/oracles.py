"""Independent reference computations used by the tests.

Nothing here calls the closed forms or optimizers under test.  Probabilities
come from numerical quadrature over the exponential SNR densities, roots
from plain bisection, and optima from dense grids.
"""

import math

import numpy as np
from scipy import integrate

LN2 = math.log(2.0)


def p_out_existing_quad(gb, ge, rs):
    """P([C_b - C_e]^+ < R_s) by integrating over Eve's SNR."""
    a = 2.0 ** rs

    def secure_given_x(x):
        # P(g_b >= a(1+x) - 1) weighted by Eve's density
        return math.exp(-(a * (1 + x) - 1) / gb) * math.exp(-x / ge) / ge

    val, _ = integrate.quad(secure_given_x, 0, math.inf, epsabs=1e-13, epsrel=1e-12)
    return 1.0 - val


def p_so_adaptive_quad(gb, ge, rs, mu):
    """P(mu < g_b < 2^Rs (1 + g_e) - 1) / P(g_b > mu) by quadrature."""
    a = 2.0 ** rs
    x0 = max(0.0, (mu + 1) / a - 1)

    def inner(x):
        upper = a * (1 + x) - 1
        return (math.exp(-mu / gb) - math.exp(-upper / gb)) * math.exp(-x / ge) / ge

    val, _ = integrate.quad(inner, x0, math.inf, epsabs=1e-14, epsrel=1e-12)
    return val / math.exp(-mu / gb)


def p_so_nonadaptive_quad(ge, redundancy):
    """P(log2(1 + g_e) > redundancy) by integrating Eve's density."""
    thresh = 2.0 ** redundancy - 1
    val, _ = integrate.quad(lambda x: math.exp(-x / ge) / ge, thresh, math.inf,
                            epsabs=1e-14, epsrel=1e-12)
    return val


def adaptive_outage(gb, ge, rs, mu):
    """Adaptive outage closed form written out independently of the package."""
    s = ge * 2.0 ** rs
    return s / (s + gb) * np.exp(-(mu + 1 - 2.0 ** rs) / s)


def bisect(f, lo, hi, iters=200):
    """Root of a sign-changing f on [lo, hi] (f(lo) > 0 > f(hi) or reverse)."""
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def min_threshold_bisect(gb, ge, eps, rs):
    """Smallest mu >= 2^Rs - 1 with adaptive outage <= eps, by bisection."""
    floor = 2.0 ** rs - 1
    if adaptive_outage(gb, ge, rs, floor) <= eps:
        return floor
    hi = floor + 1.0
    while adaptive_outage(gb, ge, rs, hi) > eps:
        hi = floor + 2 * (hi - floor)
    return bisect(lambda m: adaptive_outage(gb, ge, rs, m) - eps, floor, hi)


def min_threshold_grid(gb, ge, eps, rs):
    """Vectorized bisection of the minimal threshold over an array of rates."""
    rs = np.asarray(rs, dtype=float)
    floor = 2.0 ** rs - 1
    need = adaptive_outage(gb, ge, rs, floor) > eps
    lo = floor.copy()
    hi = floor + 1.0
    for _ in range(200):
        grow = need & (adaptive_outage(gb, ge, rs, hi) > eps)
        if not grow.any():
            break
        hi = np.where(grow, floor + 2 * (hi - floor), hi)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        above = adaptive_outage(gb, ge, rs, mid) > eps
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return np.where(need, hi, floor)


def adaptive_grid_best(gb, ge, eps, sigma, n=10_000):
    """Best throughput over an n-point R_s grid, constraints checked directly."""
    cap = -gb * math.log(sigma)
    r_hi = math.log2(1 + cap)
    rs = np.linspace(r_hi / n, r_hi, n)
    mu = min_threshold_grid(gb, ge, eps, rs)
    ok = mu <= cap
    thr = np.where(ok, rs * np.exp(-mu / gb), 0.0)
    i = int(np.argmax(thr))
    return float(thr[i]), float(rs[i])


def kappa_bisect(ge, eps):
    """Redundancy where the fixed-rate outage equals eps, by bisection."""
    if eps >= 1:
        return 0.0
    hi = 1.0
    while math.exp(-(2.0 ** hi - 1) / ge) > eps:
        hi *= 2
    return bisect(lambda r: math.exp(-(2.0 ** r - 1) / ge) - eps, 0.0, hi)


def nonadaptive_grid_best(gb, ge, eps, sigma, n=100_000):
    """Best fixed-rate throughput over an n-point R_b grid."""
    kappa = kappa_bisect(ge, eps)
    rb_cap = math.log2(1 - gb * math.log(sigma))
    rb = np.linspace(kappa, rb_cap, n + 1)[1:]
    thr = (rb - kappa) * np.exp(-(2.0 ** rb - 1) / gb)
    i = int(np.argmax(thr))
    return float(thr[i]), float(rb[i])


def lambertw_bisect(x, lo=-1.0, hi=None):
    if hi is None:
        hi = max(1.0, math.log1p(x))
    return bisect(lambda w: w * math.exp(w) - x, lo, hi)
