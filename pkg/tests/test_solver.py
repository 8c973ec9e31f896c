import numpy as np
import pytest

from demandtier import (
    SolverConfig,
    Stability,
    TechnologyState,
    classify_stability,
    excess_share,
    find_fixed_points,
    h_ratio,
    price_map,
    simulate_path,
)
from demandtier.errors import ConfigError, ShareOutOfRange

import oracles
from conftest import load_goldens

GOLDEN = load_goldens()


class TestRootStructure:
    """The headline calibration: 1 stable / 3 (stable-unstable-stable) / 1 stable."""

    def test_single_stable_root_low_education(self, sched, cubic):
        roots = find_fixed_points(sched, cubic, 0.145)
        assert len(roots) == 1
        assert roots[0].stability is Stability.STABLE

    def test_three_roots_middle_education(self, sched, cubic):
        roots = find_fixed_points(sched, cubic, 0.215)
        assert [fp.stability for fp in roots] == [
            Stability.STABLE,
            Stability.UNSTABLE,
            Stability.STABLE,
        ]
        assert roots[0].p_star < roots[1].p_star < roots[2].p_star

    def test_single_stable_root_after_collision(self, sched, cubic):
        roots = find_fixed_points(sched, cubic, 0.280)
        assert len(roots) == 1
        assert roots[0].stability is Stability.STABLE

    def test_against_golden_oracle_values(self, sched, cubic):
        for e, golden in GOLDEN.items():
            roots = find_fixed_points(sched, cubic, e)
            assert len(roots) == len(golden)
            for fp, (p_star, s_star, _, label) in zip(roots, golden):
                assert abs(fp.p_star - p_star) <= 1e-9 * max(1.0, p_star)
                assert fp.s_star == pytest.approx(s_star, rel=1e-9)
                assert fp.stability.value == label

    def test_no_roots_is_legal(self, sched, cubic):
        assert find_fixed_points(sched, cubic, 0.05) == []
        assert find_fixed_points(sched, cubic, 0.45) == []


class TestResiduals:
    def test_residual_bound_via_public_map(self, sched, cubic):
        cfg = SolverConfig()
        for e in oracles.E_VALUES:
            for fp in find_fixed_points(sched, cubic, e, cfg):
                residual = price_map(sched, cubic, fp.p_star, e) - fp.p_star
                assert abs(residual) <= cfg.bisect_tol * max(1.0, fp.p_star)

    def test_dedup_gap(self, sched, cubic):
        cfg = SolverConfig()
        for e in oracles.E_VALUES:
            roots = [fp.p_star for fp in find_fixed_points(sched, cubic, e, cfg)]
            assert all(b - a > cfg.dedup_tol for a, b in zip(roots, roots[1:]))

    def test_fixed_point_characterizations_agree(self, sched, cubic):
        # H(S(p*)) = 1 is the same equation as T(p*) = p*
        for e in oracles.E_VALUES:
            for fp in find_fixed_points(sched, cubic, e):
                s = excess_share(sched, e, fp.p_star)
                assert abs(h_ratio(cubic, s, e).value - 1.0) <= 1e-10


class TestGridRefinement:
    def test_doubling_grid_never_loses_roots(self, sched, cubic):
        for e in oracles.E_VALUES:
            counts = [
                len(find_fixed_points(sched, cubic, e, SolverConfig(grid_points=n)))
                for n in (4001, 8001, 16001)
            ]
            assert counts[0] <= counts[1] <= counts[2]
            assert counts[0] == counts[2]  # 4001 already resolves this scenario


class TestStability:
    def test_slope_matches_finite_difference(self, sched, cubic):
        for e in oracles.E_VALUES:
            for fp in find_fixed_points(sched, cubic, e):
                h = 1e-6 * fp.p_star
                fd = (
                    price_map(sched, cubic, fp.p_star + h, e)
                    - price_map(sched, cubic, fp.p_star - h, e)
                ) / (2.0 * h)
                assert fp.t_prime == pytest.approx(fd, rel=1e-5)

    def test_marginal_when_ratio_slope_vanishes(self):
        t_prime, label = classify_stability(0.37, 0.0)
        assert t_prime == 1.0
        assert label is Stability.MARGINAL

    def test_arithmetic_case(self):
        t_prime, label = classify_stability(0.5, 4.0)
        assert t_prime == 0.0
        assert label is Stability.STABLE

    def test_share_validation(self):
        with pytest.raises(ShareOutOfRange):
            classify_stability(0.0, 1.0)
        with pytest.raises(ShareOutOfRange):
            classify_stability(1.0, 1.0)

    def test_linear_learning_interior_roots_unstable(self, sched, linear):
        # monotone learning: the ratio falls in the share, so any interior
        # fixed point fails the stability test
        found_any = False
        for e in oracles.E_VALUES:
            for fp in find_fixed_points(sched, linear, e):
                found_any = True
                assert abs(fp.t_prime) > 1.0
                assert fp.stability is Stability.UNSTABLE
        assert found_any


class TestBasinConsistency:
    def test_stable_roots_attract(self, sched, cubic):
        cfg = SolverConfig()
        for e in oracles.E_VALUES:
            for fp in find_fixed_points(sched, cubic, e, cfg):
                if fp.stability is not Stability.STABLE:
                    continue
                for sign in (-1.0, 1.0):
                    start = fp.p_star + sign * 10.0 * cfg.dedup_tol
                    path = simulate_path(
                        sched, cubic, TechnologyState(a_H=1.0, a_L=start), e, 10.0, 500
                    )
                    assert abs(path.p[-1] - fp.p_star) < 1e-9

    def test_unstable_root_repels(self, sched, cubic):
        cfg = SolverConfig()
        unstable = [
            fp for fp in find_fixed_points(sched, cubic, 0.215, cfg)
            if fp.stability is Stability.UNSTABLE
        ]
        assert len(unstable) == 1
        fp = unstable[0]
        for sign in (-1.0, 1.0):
            start = fp.p_star + sign * 10.0 * cfg.dedup_tol
            path = simulate_path(
                sched, cubic, TechnologyState(a_H=1.0, a_L=start), 0.215, 10.0, 500
            )
            assert np.max(np.abs(path.p - fp.p_star)) > 1e-3


class TestSolverConfig:
    def test_defaults(self):
        cfg = SolverConfig()
        assert (cfg.p_min, cfg.p_max, cfg.grid_points) == (0.01, 14.0, 4001)
        assert (cfg.bisect_tol, cfg.dedup_tol, cfg.marginal_tol) == (1e-12, 1e-7, 1e-8)

    def test_validation(self):
        with pytest.raises(ConfigError, match="p_m"):
            SolverConfig(p_min=2.0, p_max=1.0)
        with pytest.raises(ConfigError, match="grid_points"):
            SolverConfig(grid_points=2)
        with pytest.raises(ConfigError, match="bisect_tol"):
            SolverConfig(bisect_tol=0.0)
