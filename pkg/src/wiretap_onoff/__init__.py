"""Secure on-off transmission over Rayleigh fading wiretap channels.

Closed-form secrecy outage and transmission probabilities, a seeded Monte
Carlo oracle, and throughput-optimal designs for adaptive and non-adaptive
Wyner encoders.
"""

from .closed_form import (
    EvalResult,
    evaluate_adaptive,
    evaluate_nonadaptive,
    p_out_existing,
    p_so_adaptive,
    p_so_nonadaptive,
    p_tx_onoff,
)
from .designer import (
    DesignOutcome,
    Scheme,
    feasible_adaptive,
    feasible_nonadaptive,
    optimal_mu_adaptive,
    optimal_params_nonadaptive,
    optimize_adaptive,
)
from .lambertw import lambert_w0
from .model import (
    AdaptiveDesign,
    ChannelParams,
    Constraints,
    DomainError,
    NonAdaptiveDesign,
    PhysicalLink,
    capacity,
    secrecy_capacity,
    snr_from_physical,
)
from .monte_carlo import (
    McConfig,
    McEstimate,
    estimate_adaptive,
    estimate_nonadaptive,
    estimate_p_out_existing,
    sample_snr,
)

__version__ = "0.1.0"
