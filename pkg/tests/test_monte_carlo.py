import math

import numpy as np
import pytest
from scipy import stats

from wiretap_onoff.closed_form import p_out_existing, p_so_adaptive, p_so_nonadaptive
from wiretap_onoff.model import AdaptiveDesign, ChannelParams, DomainError, NonAdaptiveDesign
from wiretap_onoff.monte_carlo import (
    McConfig,
    bernoulli_estimate,
    draw_snrs,
    estimate_adaptive,
    estimate_nonadaptive,
    estimate_p_out_existing,
    sample_snr,
    uniforms,
)

CH = ChannelParams(10, 1)
N = 1_000_000


def test_sample_snr_examples():
    assert sample_snr(1, math.exp(-1)) == pytest.approx(1.0, rel=1e-15)
    assert sample_snr(10, math.exp(-1)) == pytest.approx(10.0, rel=1e-15)
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            sample_snr(1, bad)
    with pytest.raises(DomainError):
        sample_snr(0, 0.5)


def test_empirical_mean_of_exponential_draws():
    gb, _ = draw_snrs(ChannelParams(5, 1), seed=3, start=0, count=N)
    assert abs(gb.mean() - 5.0) <= 4 * 5 / 1e3


def test_uniforms_open_interval_and_smoke_statistics():
    u = uniforms(seed=11, start=0, count=200_000).ravel()
    assert u.min() > 0 and u.max() < 1
    assert stats.kstest(u, "uniform").pvalue > 1e-3
    # the two columns (Bob, Eve) should be uncorrelated
    pair = uniforms(seed=11, start=0, count=200_000)
    assert abs(np.corrcoef(pair[:, 0], pair[:, 1])[0, 1]) < 4 / math.sqrt(200_000)


def test_uniforms_are_a_single_stream():
    whole = uniforms(seed=5, start=0, count=1000)
    assert np.array_equal(uniforms(seed=5, start=400, count=600), whole[400:])
    with pytest.raises(ValueError):
        uniforms(seed=5, start=3, count=10)


def test_draws_at_extreme_uniforms_are_finite():
    gb, ge = draw_snrs(CH, seed=0, start=0, count=10)
    assert np.all(np.isfinite(gb)) and np.all(gb > 0)


def test_mc_config_validation():
    for kwargs in ({"num_samples": 0}, {"num_samples": 10, "seed": -1},
                   {"num_samples": 10, "seed": 2 ** 64}, {"num_samples": 10, "chunk_size": 3},
                   {"num_samples": 10, "workers": 0}):
        with pytest.raises(DomainError):
            McConfig(**kwargs)


def test_bernoulli_standard_error():
    e = bernoulli_estimate(25, 100, 400)
    assert e.estimate == 0.25
    assert e.std_error == pytest.approx(math.sqrt(0.25 * 0.75 / 100))
    assert e.num_conditioning_hits == 100 <= e.num_samples
    empty = bernoulli_estimate(0, 0, 400)
    assert not empty.defined and not empty.agrees_with(0.0)


def test_existing_outage_estimate():
    e = estimate_p_out_existing(CH, 1.0, McConfig(N, seed=1))
    assert abs(e.estimate - 0.2460) <= 0.0017
    assert e.agrees_with(p_out_existing(CH, 1.0))
    assert estimate_p_out_existing(CH, 60.0, McConfig(10_000, seed=1)).estimate == 1.0
    sym = estimate_p_out_existing(ChannelParams(1, 1), 1e-9, McConfig(N, seed=2))
    assert sym.agrees_with(0.5)


def test_existing_outage_small_rate_limit():
    # as R_s -> 0 the outage tends to P(g_e >= g_b) = G_e / (G_b + G_e)
    e = estimate_p_out_existing(CH, 1e-9, McConfig(N, seed=9))
    assert e.agrees_with(1 / 11)


@pytest.mark.parametrize("mu, expected", [(1.0, 1 / 6), (3.0, math.exp(-1) / 6)])
def test_adaptive_estimates(mu, expected):
    est = estimate_adaptive(CH, AdaptiveDesign(1.0, mu), McConfig(N, seed=42))
    assert est.p_so.agrees_with(expected)
    assert est.p_tx.agrees_with(math.exp(-mu / 10))
    assert est.throughput.estimate == pytest.approx(est.p_tx.estimate * 1.0)
    # the outage is conditional: its sample count is the number of transmissions
    assert est.p_so.num_conditioning_hits == round(est.p_tx.estimate * N)


def test_adaptive_always_transmits_at_zero_threshold():
    est = estimate_adaptive(CH, AdaptiveDesign(1e-9, 2 ** 1e-9 - 1), McConfig(100_000, seed=1))
    assert est.p_tx.estimate == 1.0


def test_nonadaptive_estimates_and_threshold_independence():
    d3 = NonAdaptiveDesign(2, 1, 3)
    d6 = NonAdaptiveDesign(2, 1, 6)
    e3 = estimate_nonadaptive(CH, d3, McConfig(N, seed=7))
    e6 = estimate_nonadaptive(CH, d6, McConfig(N, seed=8))
    assert e3.p_so.agrees_with(math.exp(-1))
    assert e6.p_so.agrees_with(p_so_nonadaptive(CH, d6))
    diff = abs(e3.p_so.estimate - e6.p_so.estimate)
    assert diff <= 4 * math.hypot(e3.p_so.std_error, e6.p_so.std_error)


def test_nonadaptive_vanishing_redundancy():
    est = estimate_nonadaptive(CH, NonAdaptiveDesign(1 + 1e-12, 1, 1.01), McConfig(100_000, seed=1))
    assert est.p_so.estimate == pytest.approx(1.0, abs=1e-3)


def test_empty_conditioning_set_is_undefined():
    est = estimate_adaptive(CH, AdaptiveDesign(1.0, 1e6), McConfig(1000, seed=1))
    assert est.p_tx.estimate == 0.0
    assert est.p_so.num_conditioning_hits == 0
    assert not est.p_so.defined
    assert math.isnan(est.p_so.estimate)


def test_determinism_and_partition_invariance():
    d = AdaptiveDesign(1.5, 4.0)
    ref = estimate_adaptive(CH, d, McConfig(300_001, seed=99))
    assert estimate_adaptive(CH, d, McConfig(300_001, seed=99)) == ref
    for chunk, workers in [(1000, 4), (65536, 3), (1 << 20, 2), (4094, 1)]:
        assert estimate_adaptive(CH, d, McConfig(300_001, 99, chunk, workers)) == ref
    assert estimate_adaptive(CH, d, McConfig(300_001, seed=100)) != ref

    tiny = McConfig(2001, seed=99, chunk_size=2)
    assert estimate_adaptive(CH, d, tiny) == estimate_adaptive(CH, d, McConfig(2001, seed=99))


def test_std_error_scales_as_inverse_sqrt_n():
    d = AdaptiveDesign(1.0, 1.0)
    small = estimate_adaptive(CH, d, McConfig(250_000, seed=5)).p_so.std_error
    big = estimate_adaptive(CH, d, McConfig(1_000_000, seed=6)).p_so.std_error
    assert small / big == pytest.approx(2.0, rel=0.2)


def test_adaptive_estimate_tracks_closed_form_off_grid():
    ch = ChannelParams(3.0, 2.0)
    d = AdaptiveDesign(0.7, 1.9)
    est = estimate_adaptive(ch, d, McConfig(N, seed=21))
    assert est.p_so.agrees_with(p_so_adaptive(ch, d))
