"""Exact outage and transmission probabilities under Rayleigh fading.

Both SNRs are exponential with means ``gamma_bar_b`` and ``gamma_bar_e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import AdaptiveDesign, ChannelParams, DomainError, NonAdaptiveDesign

_PROB_SLACK = 1e-12
# beyond this many bits 2**R overflows a double and the outage limits are exact
_MAX_LOG2 = 1000.0


def _as_probability(p: float, what: str) -> float:
    if not (-_PROB_SLACK <= p <= 1.0 + _PROB_SLACK):
        raise ArithmeticError(f"{what} evaluated to {p!r}, outside [0, 1]")
    return min(1.0, max(0.0, p))


@dataclass(frozen=True)
class EvalResult:
    p_tx: float
    p_so: float
    throughput: float


def p_tx_onoff(ch: ChannelParams, mu: float) -> float:
    """Probability that Bob's SNR exceeds the on-off threshold ``mu``."""
    if not mu >= 0:
        raise DomainError(f"mu must be >= 0 (got {mu!r})")
    return math.exp(-mu / ch.gamma_bar_b)


def p_so_adaptive(ch: ChannelParams, design: AdaptiveDesign) -> float:
    """Secrecy outage probability of the adaptive-encoder on-off scheme.

    Conditioned on transmission (Bob's SNR above ``design.mu``) with the
    codeword rate set to Bob's instantaneous capacity.
    """
    two_rs = 2.0 ** design.rate_s
    scale = ch.gamma_bar_e * two_rs
    # mu + 1 - 2**Rs formed before dividing.  AdaptiveDesign already enforces
    # mu >= 2**Rs - 1, so a negative value here is a rounding artifact.
    excess = max(0.0, (design.mu + 1.0) - two_rs)
    p = scale / (scale + ch.gamma_bar_b) * math.exp(-excess / scale)
    return _as_probability(p, "p_so_adaptive")


def p_so_nonadaptive(ch: ChannelParams, design: NonAdaptiveDesign) -> float:
    """Secrecy outage probability with a fixed codeword rate.

    Independent of ``design.mu``: Eve's SNR does not depend on Bob's.
    """
    redundancy = design.rate_b - design.rate_s
    if redundancy <= 0:
        raise DomainError(
            f"rate_b must exceed rate_s (got rate_b={design.rate_b!r}, rate_s={design.rate_s!r})")
    if redundancy > _MAX_LOG2:
        return 0.0
    p = math.exp(-math.expm1(redundancy * math.log(2.0)) / ch.gamma_bar_e)
    return _as_probability(p, "p_so_nonadaptive")


def p_out_existing(ch: ChannelParams, rate_s: float) -> float:
    """Unconditional outage ``P(C_s < R_s)`` of the classic formulation.

    With ``a = 2**R_s``,
    ``P(C_s >= R_s) = P(g_b >= a(1 + g_e) - 1)
    = exp(-(a - 1)/G_b) * G_b / (G_b + a G_e)``.
    """
    if not (rate_s > 0 and math.isfinite(rate_s)):
        raise DomainError(f"rate_s must be finite and > 0 (got {rate_s!r})")
    if rate_s > _MAX_LOG2:
        return 1.0
    a = 2.0 ** rate_s
    gb, ge = ch.gamma_bar_b, ch.gamma_bar_e
    p_secure = math.exp(-math.expm1(rate_s * math.log(2.0)) / gb) * gb / (gb + a * ge)
    return _as_probability(1.0 - p_secure, "p_out_existing")


def evaluate_adaptive(ch: ChannelParams, design: AdaptiveDesign) -> EvalResult:
    p_tx = p_tx_onoff(ch, design.mu)
    return EvalResult(p_tx, p_so_adaptive(ch, design), p_tx * design.rate_s)


def evaluate_nonadaptive(ch: ChannelParams, design: NonAdaptiveDesign) -> EvalResult:
    p_tx = p_tx_onoff(ch, design.mu)
    return EvalResult(p_tx, p_so_nonadaptive(ch, design), p_tx * design.rate_s)
