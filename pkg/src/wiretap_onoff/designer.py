"""Throughput-maximizing designs for the two on-off transmission schemes.

Both problems maximize ``p_tx * R_s`` subject to ``p_so <= epsilon`` and
``p_tx >= sigma``.  The non-adaptive problem has a closed-form optimum via
Lambert W; the adaptive one reduces to a 1-D search over ``R_s``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Optional, Union

from .closed_form import EvalResult, evaluate_adaptive, evaluate_nonadaptive
from .lambertw import lambert_w0
from .model import AdaptiveDesign, ChannelParams, Constraints, NonAdaptiveDesign

_LN2 = math.log(2.0)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# constraint slack for float noise at active constraints
CONSTRAINT_TOL = 1e-9
# relative distance to a feasibility bound that is still treated as "on" it
BOUNDARY_RTOL = 1e-12
SCAN_POINTS = 2048


class Scheme(str, Enum):
    ADAPTIVE = "adaptive"
    NONADAPTIVE = "nonadaptive"


@dataclass(frozen=True)
class DesignOutcome:
    """Solution of the constrained throughput problem for one scheme.

    ``design`` and ``result`` are None when the problem is infeasible.
    ``near_boundary`` flags epsilon within ``BOUNDARY_RTOL`` of the
    feasibility bound.
    """

    scheme: Scheme
    feasible: bool
    design: Optional[Union[AdaptiveDesign, NonAdaptiveDesign]] = None
    result: Optional[EvalResult] = None
    binding_constraints: frozenset = field(default_factory=frozenset)
    near_boundary: bool = False

    @property
    def throughput(self) -> float:
        return self.result.throughput if self.result is not None else 0.0

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "feasible": self.feasible,
            "design": asdict(self.design) if self.design is not None else None,
            "result": asdict(self.result) if self.result is not None else None,
            "binding_constraints": sorted(self.binding_constraints),
            "near_boundary": self.near_boundary,
        }


def adaptive_feasibility_bound(ch: ChannelParams, sigma: float) -> float:
    ge, gb = ch.gamma_bar_e, ch.gamma_bar_b
    return ge / (ge + gb) * sigma ** (gb / ge)


def nonadaptive_feasibility_bound(ch: ChannelParams, sigma: float) -> float:
    return sigma ** (ch.gamma_bar_b / ch.gamma_bar_e)


def _strictly_above(epsilon: float, bound: float) -> bool:
    return epsilon - bound > BOUNDARY_RTOL * bound


def _near(epsilon: float, bound: float) -> bool:
    return abs(epsilon - bound) <= BOUNDARY_RTOL * bound


def feasible_adaptive(ch: ChannelParams, cons: Constraints) -> bool:
    """Whether some positive secrecy rate meets both constraints (adaptive encoder).

    ``sigma = 1`` pins the threshold to 0, which no positive rate allows.
    """
    if cons.sigma >= 1.0:
        return False
    return _strictly_above(cons.epsilon, adaptive_feasibility_bound(ch, cons.sigma))


def feasible_nonadaptive(ch: ChannelParams, cons: Constraints) -> bool:
    return _strictly_above(cons.epsilon, nonadaptive_feasibility_bound(ch, cons.sigma))


def optimal_mu_adaptive(ch: ChannelParams, epsilon: float, rate_s: float) -> float:
    """Smallest on-off threshold meeting ``p_so <= epsilon`` at secrecy rate ``rate_s``.

    Either the rate floor ``2**R_s - 1`` already satisfies the security
    constraint, or the threshold is raised until the outage equals epsilon.
    """
    a = 2.0 ** rate_s
    floor = a - 1.0
    if epsilon >= 1.0:
        return floor
    scale = ch.gamma_bar_e * a
    p_at_floor = scale / (scale + ch.gamma_bar_b)
    if p_at_floor <= epsilon:
        return floor
    return floor + scale * math.log(p_at_floor / epsilon)


def _qos_threshold_cap(ch: ChannelParams, sigma: float) -> float:
    return -ch.gamma_bar_b * math.log(sigma)


def max_adaptive_rate(ch: ChannelParams, cons: Constraints) -> float:
    """Largest ``R_s`` whose optimal threshold still meets the QoS constraint.

    The optimal threshold is increasing in ``R_s``, so the feasible rates
    form an interval ``(0, r]``; ``r`` is found by bisection and always lies
    on the feasible side.
    """
    cap = _qos_threshold_cap(ch, cons.sigma)
    hi = math.log1p(cap) / _LN2
    if optimal_mu_adaptive(ch, cons.epsilon, hi) <= cap:
        return hi
    lo = 0.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return lo
        if optimal_mu_adaptive(ch, cons.epsilon, mid) <= cap:
            lo = mid
        else:
            hi = mid


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       xtol: float = 1e-12) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol * (1.0 + abs(lo) + abs(hi)):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _binding(result: EvalResult, cons: Constraints, security_active: bool) -> frozenset:
    out = set()
    if security_active and abs(result.p_so - cons.epsilon) <= CONSTRAINT_TOL:
        out.add("security")
    if result.p_tx - cons.sigma <= CONSTRAINT_TOL:
        out.add("qos")
    return frozenset(out or {"none"})


def optimize_adaptive(ch: ChannelParams, cons: Constraints) -> DesignOutcome:
    """Best constant secrecy rate and threshold for the adaptive encoder.

    Scans the feasible rate interval on a uniform grid, then refines the
    best bracket by golden-section search.  No unimodality is assumed
    beyond the bracket; ties go to the smallest rate.
    """
    bound = adaptive_feasibility_bound(ch, cons.sigma)
    if not feasible_adaptive(ch, cons):
        return DesignOutcome(Scheme.ADAPTIVE, False, near_boundary=_near(cons.epsilon, bound))

    gb, eps = ch.gamma_bar_b, cons.epsilon

    def objective(rs: float) -> float:
        return rs * math.exp(-optimal_mu_adaptive(ch, eps, rs) / gb)

    r_top = max_adaptive_rate(ch, cons)
    grid = [r_top * i / SCAN_POINTS for i in range(1, SCAN_POINTS + 1)]
    values = [objective(r) for r in grid]
    k = max(range(SCAN_POINTS), key=lambda i: (values[i], -i))

    lo = grid[k - 1] if k > 0 else 0.0
    hi = grid[min(k + 1, SCAN_POINTS - 1)]
    candidates = [(values[k], grid[k]), (values[-1], r_top)]
    x, fx = golden_section_max(objective, lo, hi)
    if 0.0 < x <= r_top:
        candidates.append((fx, x))
    # highest objective wins; among equals the smaller rate
    _, rs = max(candidates, key=lambda c: (c[0], -c[1]))

    design = AdaptiveDesign(rs, optimal_mu_adaptive(ch, eps, rs))
    result = evaluate_adaptive(ch, design)
    return DesignOutcome(Scheme.ADAPTIVE, True, design, result,
                         _binding(result, cons, eps < 1.0),
                         near_boundary=_near(eps, bound))


def security_penalty(ch: ChannelParams, epsilon: float) -> float:
    """Rate redundancy ``log2(1 + G_e ln(1/epsilon))`` that caps the outage at epsilon."""
    if epsilon >= 1.0:
        return 0.0
    return math.log1p(-ch.gamma_bar_e * math.log(epsilon)) / _LN2


def nonadaptive_stationary_rate_b(ch: ChannelParams, kappa: float) -> float:
    """Unconstrained maximizer of ``(R_b - kappa) * exp(-(2**R_b - 1)/G_b)``."""
    return kappa + lambert_w0(ch.gamma_bar_b * 2.0 ** (-kappa)) / _LN2


def optimal_params_nonadaptive(ch: ChannelParams, cons: Constraints) -> DesignOutcome:
    """Closed-form optimal design for the fixed-rate (1-bit feedback) scheme."""
    bound = nonadaptive_feasibility_bound(ch, cons.sigma)
    if not feasible_nonadaptive(ch, cons):
        return DesignOutcome(Scheme.NONADAPTIVE, False, near_boundary=_near(cons.epsilon, bound))

    kappa = security_penalty(ch, cons.epsilon)
    rb_cap = math.log1p(_qos_threshold_cap(ch, cons.sigma)) / _LN2
    rb = min(nonadaptive_stationary_rate_b(ch, kappa), rb_cap)
    # with no security penalty R_s -> R_b is a supremum; stop one ulp short
    rs = min(rb - kappa, math.nextafter(rb, 0.0))
    design = NonAdaptiveDesign(rb, rs, 2.0 ** rb - 1.0)
    result = evaluate_nonadaptive(ch, design)
    return DesignOutcome(Scheme.NONADAPTIVE, True, design, result,
                         _binding(result, cons, cons.epsilon < 1.0),
                         near_boundary=_near(cons.epsilon, bound))
