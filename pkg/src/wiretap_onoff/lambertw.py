"""Principal branch of the Lambert W function for real arguments."""

from __future__ import annotations

import math

from .model import DomainError

_INV_E = math.exp(-1.0)


def _initial_guess(x: float) -> float:
    if x >= 0:
        return math.log1p(x)
    # series about the branch point x = -1/e
    p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3


def _bisect(x: float) -> float:
    # w*exp(w) is increasing on [-1, inf); log1p(x) bounds W(x) from above
    lo = -1.0
    hi = max(1.0, math.log1p(x)) if x > 0 else 0.0
    for _ in range(2100):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if mid * math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lambert_w0(x: float, max_iter: int = 64) -> float:
    """Real ``w >= -1`` solving ``w * exp(w) = x``, for ``x >= -1/e``.

    Halley's iteration from a log (``x >= 0``) or branch-point series
    (``x < 0``) start, falling back to bisection if it fails to settle.
    """
    if math.isnan(x) or x < -_INV_E:
        raise DomainError(f"lambert_w0 needs x >= -1/e (got {x!r})")
    if x == 0.0:
        return 0.0
    if x == -_INV_E:
        return -1.0
    if math.isinf(x):
        return math.inf

    w = _initial_guess(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_next = w - step
        if not math.isfinite(w_next) or w_next < -1.0:
            break
        w = w_next
        if abs(step) <= 1e-15 * (1.0 + abs(w)):
            return w
    return _bisect(x)
