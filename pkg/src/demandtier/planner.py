"""Social-planner education diagnostics over a finite horizon.

The planner discounts period utilities, pays a resource cost kappa(E) for
education, and internalizes that the high-tier productivity grows with the
excess-quantity share (linear learning only). Along a given simulated path
this module evaluates, period by period, the three terms of the education
first-order condition:

    preference term   dU/dE at the optimal bundle,
    spillover term    eta * (phi * dS/dE + nu) * A_H,
    shadow cost       lambda * kappa'(E),

plus their residual ("wedge"). The costate eta follows a backward recursion
obtained by differentiating the Lagrangian in next-period high-tier
productivity, with the price channel p = A_L/A_H sent through the demand
system via Roy's identity; the terminal costate is zero. A positive wedge
means the evaluated path underprovides education relative to the planner's
margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .demand import (
    HouseholdBudget,
    PreferenceSchedule,
    alpha_of,
    alpha_slope_of,
    gammaL_slope_of,
    solve_demand,
)
from .dynamics import LearningSpec, LearningVariant, TimePath
from .errors import ConfigError, InvalidHorizon, SpecVariantUnsupported


@dataclass(frozen=True)
class PlannerConfig:
    """Discount factor, horizon, and the education cost kappa(E) = scale*E^curv."""

    beta: float = 0.95
    horizon: int = 3
    kappa_scale: float = 0.05
    kappa_curv: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ConfigError(f"beta must be in (0, 1), got {self.beta}")
        if not isinstance(self.horizon, int) or isinstance(self.horizon, bool) \
                or self.horizon < 1:
            raise ConfigError(f"horizon must be an integer >= 1, got {self.horizon}")
        if self.kappa_scale <= 0.0:
            raise ConfigError(f"kappa_scale must be > 0, got {self.kappa_scale}")
        if self.kappa_curv < 1.0:
            raise ConfigError(f"kappa_curv must be >= 1, got {self.kappa_curv}")


@dataclass
class FocReport:
    """Per-period first-order-condition terms; wedge = pref + spill - shadow."""

    t: np.ndarray
    preference_term: np.ndarray
    spillover_term: np.ndarray
    shadow_cost: np.ndarray
    wedge: np.ndarray
    lambda_t: np.ndarray
    eta_t: np.ndarray

    def __len__(self) -> int:
        return int(self.t.shape[0])


def kappa(cfg: PlannerConfig, E: float) -> float:
    return cfg.kappa_scale * E**cfg.kappa_curv


def kappa_prime(cfg: PlannerConfig, E: float) -> float:
    return cfg.kappa_scale * cfg.kappa_curv * E ** (cfg.kappa_curv - 1.0)


def evaluate_foc(
    sched: PreferenceSchedule,
    spec: LearningSpec,
    cfg: PlannerConfig,
    path: TimePath,
) -> FocReport:
    """Education FOC terms along the first ``cfg.horizon`` periods of a path.

    Bundles are re-solved at the net income Y - kappa(E) so the resource
    constraint holds as the planner writes it; the low-tier productivity path
    is taken as exogenous data. Requires linear learning and an interior
    optimum every period.
    """
    if spec.variant is not LearningVariant.LINEAR:
        raise SpecVariantUnsupported(
            "the planner first-order condition is stated for linear learning"
        )
    horizon = cfg.horizon
    if len(path) < horizon:
        raise InvalidHorizon(
            f"path has {len(path)} rows but the planner horizon is {horizon}"
        )
    nu, phi = spec.nu, spec.phi

    e = path.e_path[:horizon]
    y = path.income_path[:horizon]
    p = path.p[:horizon]
    s = path.s_q[:horizon]
    a_h = path.a_h[:horizon]

    lam = np.empty(horizon)
    pref = np.empty(horizon)
    ds_de = np.empty(horizon)
    c_h = np.empty(horizon)
    for t in range(horizon):
        net = y[t] - kappa(cfg, e[t])
        if net <= 0.0:
            raise ConfigError(
                f"income {y[t]} cannot cover the education cost {kappa(cfg, e[t])} at t={t}"
            )
        sol = solve_demand(sched, HouseholdBudget(income=net, price_H=p[t]), e[t])
        a = alpha_of(sched, e[t])
        lam[t] = sol.utility / sol.supernumerary
        ex_l = (1.0 - a) * sol.supernumerary  # above-subsistence quantities, price_L = 1
        ex_h = sol.c_H - sched.gamma_H
        pref[t] = sol.utility * (
            alpha_slope_of(sched, e[t]) * math.log(ex_h / ex_l)
            - (1.0 - a) * gammaL_slope_of(sched, e[t]) / ex_l
        )
        ds_de[t] = alpha_slope_of(sched, e[t]) * s[t] * (1.0 - s[t]) / (a * (1.0 - a))
        c_h[t] = sol.c_H

    eta = np.zeros(horizon)
    for t in range(horizon - 2, -1, -1):
        g_h_next = 1.0 + nu * e[t + 1] + phi * s[t + 1]
        eta[t] = cfg.beta * (
            lam[t + 1] * p[t + 1] * c_h[t + 1] / a_h[t + 1]
            + eta[t + 1] * (g_h_next + phi * s[t + 1] * (1.0 - s[t + 1]))
        )

    spill = eta * (phi * ds_de + nu) * a_h
    shadow = lam * np.array([kappa_prime(cfg, e_t) for e_t in e])
    wedge = pref + spill - shadow
    return FocReport(
        t=np.arange(horizon),
        preference_term=pref,
        spillover_term=spill,
        shadow_cost=shadow,
        wedge=wedge,
        lambda_t=lam,
        eta_t=eta,
    )


def education_wedge_sign(report: FocReport) -> np.ndarray:
    """True per period where the wedge is positive, i.e. the planner would
    raise education relative to the evaluated path."""
    return report.wedge > 0.0
