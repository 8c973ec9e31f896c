"""Fixed points of the relative-price map: grid bracketing, bisection,
deduplication, and local stability classification.

The map residual F(p; E) = T(p; E) - p is evaluated on an equally spaced
price grid; every sign change is refined by bisection until the residual is
below tolerance, nearby roots are deduplicated, and each surviving root is
classified through the analytic slope T'(p*) = 1 - s*(1-s*) * dH/ds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .demand import PreferenceSchedule, alpha_of
from .dynamics import LearningSpec, excess_share, h_ratio, price_map
from .errors import ConfigError, ShareOutOfRange

_BISECT_MAX_ITER = 200


class Stability(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


@dataclass(frozen=True)
class SolverConfig:
    """Grid, bisection, deduplication and classification tolerances."""

    p_min: float = 0.01
    p_max: float = 14.0
    grid_points: int = 4001
    bisect_tol: float = 1e-12
    dedup_tol: float = 1e-7
    marginal_tol: float = 1e-8

    def __post_init__(self):
        if not 0.0 < self.p_min < self.p_max:
            raise ConfigError(
                f"need 0 < p_min < p_max, got p_min={self.p_min}, p_max={self.p_max}"
            )
        if not isinstance(self.grid_points, int) or isinstance(self.grid_points, bool) \
                or self.grid_points < 3:
            raise ConfigError(f"grid_points must be an integer >= 3, got {self.grid_points}")
        for name in ("bisect_tol", "dedup_tol", "marginal_tol"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class FixedPoint:
    """A root p* of the price map with its share, slope, and stability class."""

    p_star: float
    s_star: float
    t_prime: float
    stability: Stability


def classify_stability(
    s_star: float, dH_ds_at_star: float, marginal_tol: float = 1e-8
) -> tuple[float, Stability]:
    """Map slope and stability class from the share and dH/ds at a fixed point.

    t_prime = 1 - s*(1-s*)*dH/ds; stable iff |t_prime| < 1 within the marginal
    band, unstable iff |t_prime| > 1 beyond it, marginal in between (the
    nonhyperbolic case, e.g. dH/ds = 0).
    """
    if not 0.0 < s_star < 1.0:
        raise ShareOutOfRange(f"share must be in (0, 1), got {s_star}")
    t_prime = 1.0 - s_star * (1.0 - s_star) * dH_ds_at_star
    mag = abs(t_prime)
    if mag < 1.0 - marginal_tol:
        stability = Stability.STABLE
    elif mag > 1.0 + marginal_tol:
        stability = Stability.UNSTABLE
    else:
        stability = Stability.MARGINAL
    return t_prime, stability


def _residual_of(sched, spec, p, E) -> float:
    # independent of the kernel bisection loop: goes through the public map
    return price_map(sched, spec, p, E) - p


def find_fixed_points(
    sched: PreferenceSchedule,
    spec: LearningSpec,
    E: float,
    cfg: SolverConfig | None = None,
) -> list[FixedPoint]:
    """All fixed points of T(.; E) on [p_min, p_max], ascending in p.

    An empty list is a legal result: an interior fixed point need not exist.
    Every returned root satisfies |T(p*) - p*| <= bisect_tol * max(1, p*),
    re-checked here through the public map rather than the bisection kernel.
    """
    cfg = cfg or SolverConfig()
    alpha = alpha_of(sched, E)
    nu, phi1, phi2, chi1, chi2 = spec.coefficients

    p_grid = np.linspace(cfg.p_min, cfg.p_max, cfg.grid_points)
    f_grid = _kernels.grid_residual(p_grid, alpha, E, nu, phi1, phi2, chi1, chi2)

    candidates: list[float] = []
    for i in range(cfg.grid_points - 1):
        if f_grid[i] == 0.0:
            candidates.append(float(p_grid[i]))
        elif f_grid[i] * f_grid[i + 1] < 0.0:
            candidates.append(
                float(
                    _kernels.bisect_root(
                        p_grid[i], p_grid[i + 1], alpha, E,
                        nu, phi1, phi2, chi1, chi2,
                        cfg.bisect_tol, _BISECT_MAX_ITER,
                    )
                )
            )
    if f_grid[-1] == 0.0:
        candidates.append(float(p_grid[-1]))

    candidates.sort()
    roots: list[float] = []
    for p in candidates:
        if roots and p - roots[-1] <= cfg.dedup_tol:
            # keep whichever of the close pair has the smaller residual
            if abs(_residual_of(sched, spec, p, E)) < abs(
                _residual_of(sched, spec, roots[-1], E)
            ):
                roots[-1] = p
        else:
            roots.append(p)

    out: list[FixedPoint] = []
    for p_star in roots:
        residual = _residual_of(sched, spec, p_star, E)
        bound = cfg.bisect_tol * max(1.0, p_star)
        if abs(residual) > bound:
            raise RuntimeError(
                f"bisection returned p*={p_star} with residual {residual} above "
                f"the bound {bound}; this indicates a solver defect"
            )
        s_star = excess_share(sched, E, p_star)
        d_ds = h_ratio(spec, s_star, E).dH_ds
        t_prime, stability = classify_stability(s_star, d_ds, cfg.marginal_tol)
        out.append(
            FixedPoint(p_star=p_star, s_star=s_star, t_prime=t_prime, stability=stability)
        )
    return out
