"""Parameter sweeps producing comparison tables (one dict per point)."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .closed_form import p_out_existing, p_so_adaptive
from .designer import optimal_params_nonadaptive, optimize_adaptive
from .model import AdaptiveDesign, ChannelParams, Constraints, DomainError

SWEEP_VARIABLES = ("gamma_bar_b_db", "gamma_bar_e_db", "epsilon", "sigma", "rate_s")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    num_points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"sweep variable must be one of {SWEEP_VARIABLES} (got {self.variable!r})")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise DomainError(f"sweep needs start < stop (got start={self.start!r}, stop={self.stop!r})")
        if not (isinstance(self.num_points, int) and self.num_points >= 2):
            raise DomainError(f"sweep num_points must be >= 2 (got {self.num_points!r})")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"sweep scale must be 'linear' or 'log' (got {self.scale!r})")
        if self.scale == "log" and not self.start > 0:
            raise DomainError(f"log-scale sweep needs start > 0 (got start={self.start!r})")

    def values(self) -> list[float]:
        if self.scale == "log":
            pts = np.geomspace(self.start, self.stop, self.num_points)
        else:
            pts = np.linspace(self.start, self.stop, self.num_points)
        return [float(v) for v in pts]


@dataclass(frozen=True)
class OperatingPoint:
    """Everything a sweep row can vary, with SNRs in dB."""

    gamma_bar_b_db: float = 10.0
    gamma_bar_e_db: float = 0.0
    epsilon: float = 0.1
    sigma: float = 0.5
    rate_s: float = 1.0

    @property
    def channel(self) -> ChannelParams:
        return ChannelParams.from_db(self.gamma_bar_b_db, self.gamma_bar_e_db)

    @property
    def constraints(self) -> Constraints:
        return Constraints(self.epsilon, self.sigma)


def _points(base: OperatingPoint, spec: SweepSpec, allowed: tuple) -> list[OperatingPoint]:
    if spec.variable not in allowed:
        raise DomainError(f"sweep variable must be one of {allowed} for this table (got {spec.variable!r})")
    return [replace(base, **{spec.variable: v}) for v in spec.values()]


COMPARE_COLUMNS = ("gamma_bar_b_db", "gamma_bar_e_db", "rate_s",
                   "p_out_existing", "p_so_new", "ratio_existing_over_new")


def compare_formulations(base: OperatingPoint, spec: SweepSpec) -> list[dict]:
    """Classic outage vs conditional secrecy outage at the minimal threshold.

    The new-formulation column uses the adaptive encoder with
    ``mu = 2**R_s - 1``, the largest outage it can show.
    """
    rows = []
    for pt in _points(base, spec, ("rate_s", "gamma_bar_b_db", "gamma_bar_e_db")):
        ch = pt.channel
        p_old = p_out_existing(ch, pt.rate_s)
        p_new = p_so_adaptive(ch, AdaptiveDesign(pt.rate_s, 2.0 ** pt.rate_s - 1.0))
        rows.append({
            "gamma_bar_b_db": pt.gamma_bar_b_db,
            "gamma_bar_e_db": pt.gamma_bar_e_db,
            "rate_s": pt.rate_s,
            "p_out_existing": p_old,
            "p_so_new": p_new,
            "ratio_existing_over_new": p_old / p_new if p_new > 0 else math.inf,
        })
    return rows


THROUGHPUT_COLUMNS = (
    "gamma_bar_b_db", "gamma_bar_e_db", "epsilon", "sigma",
    "adaptive_feasible", "adaptive_throughput", "adaptive_rate_s", "adaptive_mu",
    "nonadaptive_feasible", "nonadaptive_throughput", "nonadaptive_rate_b",
    "nonadaptive_rate_s", "nonadaptive_mu",
)


def throughput_table(base: OperatingPoint, spec: SweepSpec) -> list[dict]:
    """Optimized throughput of both schemes at every sweep point (0 when infeasible)."""
    rows = []
    for pt in _points(base, spec, ("epsilon", "sigma", "gamma_bar_b_db", "gamma_bar_e_db")):
        ch, cons = pt.channel, pt.constraints
        ad = optimize_adaptive(ch, cons)
        na = optimal_params_nonadaptive(ch, cons)
        rows.append({
            "gamma_bar_b_db": pt.gamma_bar_b_db,
            "gamma_bar_e_db": pt.gamma_bar_e_db,
            "epsilon": pt.epsilon,
            "sigma": pt.sigma,
            "adaptive_feasible": ad.feasible,
            "adaptive_throughput": ad.throughput,
            "adaptive_rate_s": ad.design.rate_s if ad.feasible else math.nan,
            "adaptive_mu": ad.design.mu if ad.feasible else math.nan,
            "nonadaptive_feasible": na.feasible,
            "nonadaptive_throughput": na.throughput,
            "nonadaptive_rate_b": na.design.rate_b if na.feasible else math.nan,
            "nonadaptive_rate_s": na.design.rate_s if na.feasible else math.nan,
            "nonadaptive_mu": na.design.mu if na.feasible else math.nan,
        })
    return rows
