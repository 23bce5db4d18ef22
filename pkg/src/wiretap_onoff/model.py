"""Domain types and per-link channel quantities.

All SNRs are linear, all rates are in bits/s/Hz.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass


class DomainError(ValueError):
    """A value violates a documented invariant of a domain type or operation."""


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise DomainError(message)


def _finite(x: float) -> bool:
    return isinstance(x, numbers.Real) and math.isfinite(x)


def _rate_floor(rate: float) -> float:
    """Smallest SNR that supports ``rate``; inf where 2**rate overflows."""
    return 2.0 ** rate - 1.0 if rate < 1000 else math.inf


@dataclass(frozen=True)
class PhysicalLink:
    transmit_power: float
    channel_gain_mag_sq: float
    noise_variance: float

    def __post_init__(self):
        _require(_finite(self.transmit_power) and self.transmit_power > 0,
                 f"transmit_power must be > 0 (got {self.transmit_power!r})")
        _require(_finite(self.channel_gain_mag_sq) and self.channel_gain_mag_sq >= 0,
                 f"channel_gain_mag_sq must be >= 0 (got {self.channel_gain_mag_sq!r})")
        _require(_finite(self.noise_variance) and self.noise_variance > 0,
                 f"noise_variance must be > 0 (got {self.noise_variance!r})")


@dataclass(frozen=True)
class ChannelParams:
    """Average SNRs of the legitimate (Bob) and eavesdropper (Eve) links."""

    gamma_bar_b: float
    gamma_bar_e: float

    def __post_init__(self):
        for name in ("gamma_bar_b", "gamma_bar_e"):
            v = getattr(self, name)
            _require(_finite(v) and v > 0,
                     f"{name} must be finite and > 0 (got {v!r})")

    @classmethod
    def from_db(cls, gamma_bar_b_db: float, gamma_bar_e_db: float) -> "ChannelParams":
        return cls(db_to_linear(gamma_bar_b_db), db_to_linear(gamma_bar_e_db))


@dataclass(frozen=True)
class Constraints:
    """Security level ``epsilon`` (max p_so) and QoS level ``sigma`` (min p_tx)."""

    epsilon: float
    sigma: float

    def __post_init__(self):
        _require(_finite(self.epsilon) and 0 < self.epsilon <= 1,
                 f"epsilon must lie in (0, 1] (got {self.epsilon!r})")
        _require(_finite(self.sigma) and 0 < self.sigma <= 1,
                 f"sigma must lie in (0, 1] (got {self.sigma!r})")


@dataclass(frozen=True)
class AdaptiveDesign:
    """Secrecy rate and on-off threshold; the codeword rate tracks Bob's capacity."""

    rate_s: float
    mu: float

    def __post_init__(self):
        _require(_finite(self.rate_s) and self.rate_s > 0,
                 f"rate_s must be > 0 (got {self.rate_s!r})")
        _require(_finite(self.mu) and self.mu >= 0,
                 f"mu must be >= 0 (got {self.mu!r})")
        floor = _rate_floor(self.rate_s)
        _require(self.mu >= floor,
                 f"mu must be >= 2**rate_s - 1 = {floor!r} (got mu={self.mu!r})")


@dataclass(frozen=True)
class NonAdaptiveDesign:
    """Fixed codeword rate, secrecy rate and on-off threshold."""

    rate_b: float
    rate_s: float
    mu: float

    def __post_init__(self):
        _require(_finite(self.rate_b) and self.rate_b > 0,
                 f"rate_b must be > 0 (got {self.rate_b!r})")
        _require(_finite(self.rate_s) and self.rate_s > 0,
                 f"rate_s must be > 0 (got {self.rate_s!r})")
        _require(self.rate_s < self.rate_b,
                 f"rate_s must be < rate_b (got rate_s={self.rate_s!r}, rate_b={self.rate_b!r})")
        _require(_finite(self.mu) and self.mu >= 0,
                 f"mu must be >= 0 (got {self.mu!r})")
        floor = _rate_floor(self.rate_b)
        _require(self.mu >= floor,
                 f"mu must be >= 2**rate_b - 1 = {floor!r} (got mu={self.mu!r})")

    @property
    def rate_e(self) -> float:
        """Rate redundancy spent on confusing the eavesdropper."""
        return self.rate_b - self.rate_s


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def snr_from_physical(link: PhysicalLink) -> float:
    return link.transmit_power * link.channel_gain_mag_sq / link.noise_variance


def capacity(snr: float) -> float:
    _require(snr >= 0, f"snr must be >= 0 (got {snr!r})")
    return math.log2(1.0 + snr)


def secrecy_capacity(snr_b: float, snr_e: float) -> float:
    """``[C_b - C_e]^+`` for instantaneous SNRs at Bob and Eve."""
    _require(snr_b >= 0, f"snr_b must be >= 0 (got {snr_b!r})")
    _require(snr_e >= 0, f"snr_e must be >= 0 (got {snr_e!r})")
    if snr_b <= snr_e:
        return 0.0
    # log2 of the ratio keeps the a == b case exactly zero
    return max(0.0, math.log2((1.0 + snr_b) / (1.0 + snr_e)))
