"""Education sweeps, root-locus diagrams, saddle-node threshold refinement,
and the education-channel decomposition of the price map.

Sweeping an education grid and counting fixed points per level localizes
parameter intervals where the root count changes. Genuine saddle-node
collisions satisfy H = 1 and dH/ds = 0 simultaneously and are refined by a
damped Newton iteration with the analytic Jacobian; transitions caused by a
root crossing the price window (or by refinement failure) are kept as flagged
transitions instead of thresholds.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .demand import PreferenceSchedule, alpha_is_clipped, alpha_of
from .dynamics import (
    LearningSpec,
    _h_second_partials,
    excess_share,
    excess_share_slope_E,
    h_ratio,
)
from .errors import ConfigError, DegenerateChannel, InvalidPrice, NoConvergence
from .solver import FixedPoint, SolverConfig, find_fixed_points

_NEWTON_MAX_ITER = 200
_NEWTON_MAX_HALVINGS = 40


@dataclass(frozen=True)
class SweepConfig:
    """Education grid and the residual tolerance for threshold refinement."""

    E_min: float = 0.05
    E_max: float = 0.45
    E_points: int = 81
    refine_tol: float = 1e-8

    def __post_init__(self):
        if not self.E_min < self.E_max:
            raise ConfigError(f"need E_min < E_max, got E_min={self.E_min}, E_max={self.E_max}")
        if not isinstance(self.E_points, int) or isinstance(self.E_points, bool) \
                or self.E_points < 2:
            raise ConfigError(f"E_points must be an integer >= 2, got {self.E_points}")
        if self.refine_tol <= 0.0:
            raise ConfigError(f"refine_tol must be > 0, got {self.refine_tol}")


@dataclass(frozen=True)
class SaddleNode:
    """Education threshold where a stable/unstable root pair collides."""

    E_bar: float
    s_bar: float
    residuals: tuple[float, float]


@dataclass(frozen=True)
class Transition:
    """A root-count change between adjacent sweep rows.

    ``saddle`` holds the refined threshold when refinement converged inside
    the bracket; otherwise it is None and ``note`` says why (window-edge
    transitions and refinement failures stay flagged rather than reported).
    """

    E_lo: float
    E_hi: float
    count_lo: int
    count_hi: int
    saddle: SaddleNode | None
    note: str = ""


@dataclass
class DiagramRow:
    E: float
    roots: list[FixedPoint]


@dataclass
class BifurcationDiagram:
    rows: list[DiagramRow]
    thresholds: list[SaddleNode]
    transitions: list[Transition]


class ChannelCondition(NamedTuple):
    """Education-channel decomposition at a fixed point.

    ``lhs`` is the supply-to-preference channel ratio -H_E/H_s and ``rhs`` the
    share response alpha'(E)(1-s)s/(alpha(1-alpha)); for dH/ds > 0 education
    lowers the map exactly when lhs > rhs. ``education_lowers_price`` reports
    the sign of the full derivative dT/dE (which the comparison equals on its
    domain of validity), and ``dT_dE`` carries the derivative itself.
    """

    lhs: float
    rhs: float
    education_lowers_price: bool
    dT_dE: float


def refine_saddle_node(
    spec: LearningSpec,
    E_bracket: tuple[float, float],
    s_hint: float,
    refine_tol: float = 1e-8,
    max_iter: int = _NEWTON_MAX_ITER,
) -> SaddleNode:
    """Solve H(s, E) = 1, dH/ds(s, E) = 0 by damped Newton.

    Starts from (s_hint, midpoint of E_bracket) and uses the analytic
    Jacobian; raises NoConvergence on a singular Jacobian, a failed line
    search, or residuals still above tolerance after ``max_iter`` steps.
    """
    e_lo, e_hi = E_bracket
    s = min(max(s_hint, 1e-9), 1.0 - 1e-9)
    e = 0.5 * (e_lo + e_hi)

    def residuals(s_val, e_val):
        h = h_ratio(spec, s_val, e_val)
        return h.value - 1.0, h.dH_ds, h.dH_dE

    g1, g2, h_e = residuals(s, e)
    norm = abs(g1) + abs(g2)
    for _ in range(max_iter):
        if abs(g1) <= refine_tol and abs(g2) <= refine_tol:
            return SaddleNode(E_bar=e, s_bar=s, residuals=(abs(g1), abs(g2)))
        d_ss, d_se = _h_second_partials(spec, s, e)
        # rows: grad of (H - 1) and of dH/ds
        det = g2 * d_se - h_e * d_ss
        if abs(det) < 1e-300:
            raise NoConvergence("singular Jacobian in saddle-node refinement")
        step_s = -(g1 * d_se - h_e * g2) / det
        step_e = -(g2 * g2 - d_ss * g1) / det
        damping = 1.0
        for _ in range(_NEWTON_MAX_HALVINGS):
            s_new = min(max(s + damping * step_s, 0.0), 1.0)  # H stays evaluable
            e_new = e + damping * step_e
            g1_new, g2_new, he_new = residuals(s_new, e_new)
            if abs(g1_new) + abs(g2_new) < norm:
                break
            damping *= 0.5
        else:
            raise NoConvergence("saddle-node line search failed to reduce the residual")
        s, e = s_new, e_new
        g1, g2, h_e = g1_new, g2_new, he_new
        norm = abs(g1) + abs(g2)
    if abs(g1) <= refine_tol and abs(g2) <= refine_tol:
        return SaddleNode(E_bar=e, s_bar=s, residuals=(abs(g1), abs(g2)))
    raise NoConvergence(
        f"saddle-node refinement residuals ({abs(g1)}, {abs(g2)}) above {refine_tol} "
        f"after {max_iter} iterations"
    )


def _collision_hint(row_more: DiagramRow, row_fewer: DiagramRow) -> float:
    """Mean share of the roots that appear/disappear across a transition."""
    shares_more = [fp.s_star for fp in row_more.roots]
    shares_fewer = [fp.s_star for fp in row_fewer.roots]
    if not shares_fewer:
        return float(np.mean(shares_more))
    gaps = [min(abs(s - q) for q in shares_fewer) for s in shares_more]
    n_new = len(shares_more) - len(shares_fewer)
    order = np.argsort(gaps)[::-1][:n_new]
    return float(np.mean([shares_more[i] for i in order]))


def sweep(
    sched: PreferenceSchedule,
    spec: LearningSpec,
    sweep_cfg: SweepConfig | None = None,
    solver_cfg: SolverConfig | None = None,
    workers: int = 1,
) -> BifurcationDiagram:
    """Root inventory over an education grid plus refined thresholds.

    Grid rows are independent and may be evaluated concurrently; the merge is
    by grid order, so the diagram is identical for any ``workers`` value.
    """
    sweep_cfg = sweep_cfg or SweepConfig()
    solver_cfg = solver_cfg or SolverConfig()
    e_grid = np.linspace(sweep_cfg.E_min, sweep_cfg.E_max, sweep_cfg.E_points)

    def solve_row(e):
        return DiagramRow(E=float(e), roots=find_fixed_points(sched, spec, float(e), solver_cfg))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(solve_row, e_grid))
    else:
        rows = [solve_row(e) for e in e_grid]

    transitions: list[Transition] = []
    thresholds: list[SaddleNode] = []
    for lo, hi in zip(rows[:-1], rows[1:]):
        n_lo, n_hi = len(lo.roots), len(hi.roots)
        if n_lo == n_hi:
            continue
        row_more, row_fewer = (hi, lo) if n_hi > n_lo else (lo, hi)
        s_hint = _collision_hint(row_more, row_fewer)
        saddle = None
        note = ""
        try:
            cand = refine_saddle_node(spec, (lo.E, hi.E), s_hint, sweep_cfg.refine_tol)
        except NoConvergence as exc:
            note = f"refinement failed: {exc}"
        else:
            if lo.E < cand.E_bar < hi.E and 0.0 < cand.s_bar < 1.0:
                saddle = cand
                thresholds.append(cand)
            else:
                note = (
                    "refined solution (s={:.6g}, E={:.6g}) lies outside the bracket; "
                    "transition is not a saddle-node (root crossed the price window)"
                ).format(cand.s_bar, cand.E_bar)
        transitions.append(
            Transition(
                E_lo=lo.E, E_hi=hi.E, count_lo=n_lo, count_hi=n_hi,
                saddle=saddle, note=note,
            )
        )

    return BifurcationDiagram(rows=rows, thresholds=thresholds, transitions=transitions)


def channel_condition(
    sched: PreferenceSchedule,
    spec: LearningSpec,
    p_star: float,
    E: float,
    marginal_tol: float = 1e-8,
) -> ChannelCondition:
    """Compare the supply and preference channels of education at a fixed point.

    Raises DegenerateChannel when dH/ds sits inside the marginal band, since
    the channel ratio is then undefined; the exception still carries dT/dE.
    """
    if p_star <= 0.0:
        raise InvalidPrice(f"relative price must be > 0, got {p_star}")
    s = excess_share(sched, E, p_star)
    h = h_ratio(spec, s, E)
    s_e = excess_share_slope_E(sched, E, p_star)
    dT_dE = p_star * (h.dH_dE + h.dH_ds * s_e)
    if abs(h.dH_ds) <= marginal_tol:
        raise DegenerateChannel(
            f"dH/ds = {h.dH_ds} is inside the marginal band; channel ratio undefined",
            dT_dE=dT_dE,
        )
    a = alpha_of(sched, E)
    a_slope = 0.0 if alpha_is_clipped(sched, E) else sched.alpha_slope
    lhs = -h.dH_dE / h.dH_ds
    rhs = a_slope * (1.0 - s) * s / (a * (1.0 - a))
    return ChannelCondition(
        lhs=lhs,
        rhs=rhs,
        education_lowers_price=dT_dE < 0.0,
        dT_dE=dT_dE,
    )
