"""Monte Carlo estimators for the outage and transmission probabilities.

Each sample ``i`` draws Bob's and Eve's SNRs from raw words ``2i`` and
``2i + 1`` of a Philox stream keyed on the seed.  Philox is counter based,
so any chunk of samples can be generated independently by advancing the
counter, and the integer counts do not depend on how the work is split.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .model import AdaptiveDesign, ChannelParams, DomainError, NonAdaptiveDesign

_LN2 = math.log(2.0)
_U53 = 2.0 ** -53


@dataclass(frozen=True)
class McConfig:
    """Sample count and seed; ``chunk_size`` and ``workers`` only affect speed."""

    num_samples: int
    seed: int = 0
    chunk_size: int = 1 << 18
    workers: int = 1

    def __post_init__(self):
        if not (isinstance(self.num_samples, int) and self.num_samples >= 1):
            raise DomainError(f"num_samples must be an integer >= 1 (got {self.num_samples!r})")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise DomainError(f"seed must be an unsigned 64-bit integer (got {self.seed!r})")
        if not (isinstance(self.chunk_size, int) and self.chunk_size >= 2 and self.chunk_size % 2 == 0):
            raise DomainError(f"chunk_size must be an even integer >= 2 (got {self.chunk_size!r})")
        if not (isinstance(self.workers, int) and self.workers >= 1):
            raise DomainError(f"workers must be an integer >= 1 (got {self.workers!r})")


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    std_error: float
    num_samples: int
    num_conditioning_hits: int

    @property
    def defined(self) -> bool:
        """False when no sample fell in the conditioning event."""
        return not math.isnan(self.estimate)

    def agrees_with(self, value: float, num_se: float = 4.0) -> bool:
        return self.defined and abs(value - self.estimate) <= num_se * self.std_error


class SchemeEstimates(NamedTuple):
    p_tx: McEstimate
    p_so: McEstimate
    throughput: McEstimate


def bernoulli_estimate(hits: int, trials: int, num_samples: int) -> McEstimate:
    """Proportion ``hits / trials`` with its normal-approximation standard error.

    ``trials`` is the number of conditioning hits (equal to ``num_samples``
    for an unconditional probability).  With zero trials the estimate is NaN.
    """
    if trials == 0:
        return McEstimate(math.nan, math.nan, num_samples, 0)
    p = hits / trials
    return McEstimate(p, math.sqrt(p * (1.0 - p) / trials), num_samples, trials)


def sample_snr(gamma_bar: float, uniform_draw: float) -> float:
    """Exponential SNR with mean ``gamma_bar`` by inverse-CDF transform."""
    if not gamma_bar > 0:
        raise DomainError(f"gamma_bar must be > 0 (got {gamma_bar!r})")
    if not 0.0 < uniform_draw < 1.0:
        raise DomainError(f"uniform_draw must lie in the open interval (0, 1) (got {uniform_draw!r})")
    return -gamma_bar * math.log(uniform_draw)


def uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Open-interval uniforms for samples ``start .. start+count-1``, shape (count, 2)."""
    if start % 2:
        raise ValueError("start must be even to align with the Philox counter")
    bitgen = np.random.Philox(key=seed)
    # one counter step yields four words, i.e. two samples
    bitgen.advance(start // 2)
    raw = bitgen.random_raw(2 * count).reshape(count, 2)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _U53


def draw_snrs(ch: ChannelParams, seed: int, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    u = uniforms(seed, start, count)
    return -ch.gamma_bar_b * np.log(u[:, 0]), -ch.gamma_bar_e * np.log(u[:, 1])


def _capacity(snr: np.ndarray) -> np.ndarray:
    return np.log1p(snr) / _LN2


def _run(ch: ChannelParams, cfg: McConfig, kernel: Callable[[np.ndarray, np.ndarray], tuple]) -> np.ndarray:
    starts = range(0, cfg.num_samples, cfg.chunk_size)

    def one(start):
        count = min(cfg.chunk_size, cfg.num_samples - start)
        gb, ge = draw_snrs(ch, cfg.seed, start, count)
        return np.array(kernel(gb, ge), dtype=np.int64)

    if cfg.workers == 1:
        parts = [one(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(one, starts))
    return np.sum(parts, axis=0)


def estimate_p_out_existing(ch: ChannelParams, rate_s: float, cfg: McConfig) -> McEstimate:
    """Fraction of draws whose secrecy capacity falls below ``rate_s``."""
    if not rate_s > 0:
        raise DomainError(f"rate_s must be > 0 (got {rate_s!r})")

    def kernel(gb, ge):
        cs = np.maximum(0.0, _capacity(gb) - _capacity(ge))
        return (np.count_nonzero(cs < rate_s),)

    (outages,) = _run(ch, cfg, kernel)
    return bernoulli_estimate(int(outages), cfg.num_samples, cfg.num_samples)


def _scheme_estimates(ch, cfg, rate_s, kernel) -> SchemeEstimates:
    tx, leaks = (int(c) for c in _run(ch, cfg, kernel))
    n = cfg.num_samples
    p_tx = bernoulli_estimate(tx, n, n)
    p_so = bernoulli_estimate(leaks, tx, n)
    thr = McEstimate(p_tx.estimate * rate_s, p_tx.std_error * rate_s, n, n)
    return SchemeEstimates(p_tx, p_so, thr)


def estimate_adaptive(ch: ChannelParams, design: AdaptiveDesign, cfg: McConfig) -> SchemeEstimates:
    """Simulate on-off transmission with the codeword rate set to Bob's capacity.

    Secrecy fails on a transmitted message when Eve's capacity exceeds
    ``C_b - R_s``; the outage estimate counts transmitting samples only.
    """
    mu, rs = design.mu, design.rate_s

    def kernel(gb, ge):
        tx = gb > mu
        leak = tx & (_capacity(ge) > _capacity(gb) - rs)
        return np.count_nonzero(tx), np.count_nonzero(leak)

    return _scheme_estimates(ch, cfg, rs, kernel)


def estimate_nonadaptive(ch: ChannelParams, design: NonAdaptiveDesign, cfg: McConfig) -> SchemeEstimates:
    """Simulate on-off transmission with a fixed codeword rate.

    The outage is still counted among transmitting samples only, so its
    independence from ``mu`` can be checked rather than assumed.
    """
    mu, redundancy = design.mu, design.rate_b - design.rate_s

    def kernel(gb, ge):
        tx = gb > mu
        leak = tx & (_capacity(ge) > redundancy)
        return np.count_nonzero(tx), np.count_nonzero(leak)

    return _scheme_estimates(ch, cfg, design.rate_s, kernel)
