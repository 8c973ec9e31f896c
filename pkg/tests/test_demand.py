import math

import numpy as np
import pytest

from demandtier import (
    HouseholdBudget,
    PreferenceSchedule,
    alpha_of,
    dshare_H_dE,
    gammaL_of,
    income_elasticities,
    solve_demand,
    stone_geary_utility,
    supernumerary_income,
)
from demandtier.errors import ConfigError, NonInteriorBudget

from conftest import flat_sched


class TestAlphaSchedule:
    def test_intercept(self, sched):
        assert alpha_of(sched, 0.0) == pytest.approx(0.78, abs=1e-15)

    def test_upper_clip(self, sched):
        assert alpha_of(sched, 10.0) == 0.97

    def test_unclipped_value(self, sched):
        assert alpha_of(sched, 0.215) == pytest.approx(0.78 + 0.16 * 0.215, rel=1e-15)

    def test_monotone_and_bounded(self, sched):
        grid = np.linspace(-5.0, 20.0, 400)
        values = [alpha_of(sched, e) for e in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert all(sched.alpha_lo <= v <= sched.alpha_hi for v in values)

    def test_invalid_bounds_rejected(self):
        with pytest.raises(ConfigError, match="alpha_lo"):
            PreferenceSchedule(alpha_lo=0.9, alpha_hi=0.5)
        with pytest.raises(ConfigError, match="alpha_slope"):
            PreferenceSchedule(alpha_slope=-0.1)


class TestGammaL:
    def test_identity_at_zero(self):
        sched = PreferenceSchedule(gammaL_base=2.0, gammaL_decay=0.5)
        assert gammaL_of(sched, 0.0) == 2.0

    def test_zero_base(self):
        sched = PreferenceSchedule(gammaL_base=0.0, gammaL_decay=0.5)
        assert gammaL_of(sched, 1.0) == 0.0

    def test_exponential_decay_value(self):
        # oracle: 2 * exp(-0.5), checked decreasing by finite steps below
        sched = PreferenceSchedule(gammaL_base=2.0, gammaL_decay=0.5)
        assert gammaL_of(sched, 1.0) == pytest.approx(1.2130613194252668, rel=1e-14)

    def test_monotone_decreasing(self):
        sched = PreferenceSchedule(gammaL_base=2.0, gammaL_decay=0.5)
        grid = np.linspace(0.0, 5.0, 200)
        values = [gammaL_of(sched, e) for e in grid]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert all(v >= 0.0 for v in values)

    def test_negative_education_rejected(self, sched):
        with pytest.raises(ConfigError):
            gammaL_of(sched, -0.1)


class TestSolveDemand:
    def test_homothetic_symmetric_case(self):
        sol = solve_demand(flat_sched(0.5), HouseholdBudget(income=10.0, price_H=2.0), 0.0)
        assert sol.c_L == pytest.approx(5.0, rel=1e-14)
        assert sol.c_H == pytest.approx(2.5, rel=1e-14)
        assert sol.supernumerary == 10.0
        assert sol.share_H == pytest.approx(0.5, rel=1e-14)

    def test_subsistence_shifted_case(self):
        sol = solve_demand(
            flat_sched(0.5, gamma_l=2.0), HouseholdBudget(income=10.0, price_H=2.0), 0.0
        )
        assert sol.supernumerary == pytest.approx(8.0, rel=1e-14)
        assert sol.c_L == pytest.approx(6.0, rel=1e-14)
        assert sol.c_H == pytest.approx(2.0, rel=1e-14)
        assert sol.share_H == pytest.approx(0.4, rel=1e-14)
        assert sol.c_L + 2.0 * sol.c_H == pytest.approx(10.0, rel=1e-14)
        assert sol.utility == pytest.approx(math.sqrt(8.0), rel=1e-14)

    def test_non_interior_budget(self):
        with pytest.raises(NonInteriorBudget):
            solve_demand(
                flat_sched(0.5, gamma_l=12.0), HouseholdBudget(income=10.0, price_H=2.0), 0.0
            )

    def test_budget_validation(self):
        with pytest.raises(ConfigError, match="income"):
            HouseholdBudget(income=-1.0, price_H=2.0)
        with pytest.raises(ConfigError, match="price_H"):
            HouseholdBudget(income=1.0, price_H=0.0)

    def test_utility_zero_on_boundary(self):
        sched = flat_sched(0.5, gamma_l=2.0)
        assert stone_geary_utility(sched, 0.0, 2.0, 1.0) == 0.0
        with pytest.raises(ConfigError):
            stone_geary_utility(sched, 0.0, 1.9, 1.0)


class TestIncomeElasticities:
    def test_homothetic_limit(self):
        eta = income_elasticities(flat_sched(0.37), HouseholdBudget(income=10.0, price_H=2.0), 0.0)
        assert eta.eta_H == pytest.approx(1.0, rel=1e-14)
        assert eta.eta_L == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_eta_H_is_income_over_supernumerary(self, alpha):
        eta = income_elasticities(
            flat_sched(alpha, gamma_l=2.0), HouseholdBudget(income=10.0, price_H=2.0), 0.0
        )
        assert eta.eta_H == pytest.approx(1.25, rel=1e-14)

    def test_eta_L_value_and_fd_oracle(self):
        sched = flat_sched(0.8, gamma_l=2.0)
        budget = HouseholdBudget(income=10.0, price_H=2.0)
        eta = income_elasticities(sched, budget, 0.0)
        assert eta.eta_L == pytest.approx(0.2 / 0.36, rel=1e-13)

        h = 1e-6 * budget.income
        for good, value in (("c_H", eta.eta_H), ("c_L", eta.eta_L)):
            up = getattr(solve_demand(sched, HouseholdBudget(income=10.0 + h, price_H=2.0), 0.0), good)
            dn = getattr(solve_demand(sched, HouseholdBudget(income=10.0 - h, price_H=2.0), 0.0), good)
            c = getattr(solve_demand(sched, budget, 0.0), good)
            fd = (up - dn) / (2.0 * h) * budget.income / c
            assert value == pytest.approx(fd, rel=1e-6)

    def test_gamma_h_must_be_zero(self):
        with pytest.raises(ConfigError, match="gamma_H"):
            income_elasticities(
                flat_sched(0.5, gamma_h=0.3), HouseholdBudget(income=10.0, price_H=2.0), 0.0
            )


class TestShareSlope:
    def test_both_channels_off(self):
        slope = dshare_H_dE(flat_sched(0.5, gamma_l=2.0), HouseholdBudget(income=10.0, price_H=2.0), 0.0)
        assert slope.value == 0.0

    def test_preference_channel_only(self, sched):
        # constant gamma_L = 2, unclipped weight: slope = 0.16 * B / Y = 0.128
        const_gamma = PreferenceSchedule(gammaL_base=2.0, gammaL_decay=0.0)
        slope = dshare_H_dE(const_gamma, HouseholdBudget(income=10.0, price_H=2.0), 0.0)
        assert not slope.alpha_clipped
        assert slope.value == pytest.approx(0.16 * 8.0 / 10.0, rel=1e-14)

    def test_matches_central_difference(self, sched):
        budget = HouseholdBudget(income=10.0, price_H=2.0)
        slope = dshare_H_dE(sched, budget, 0.2)
        h = 1e-6
        fd = (
            solve_demand(sched, budget, 0.2 + h).share_H
            - solve_demand(sched, budget, 0.2 - h).share_H
        ) / (2.0 * h)
        assert slope.value > 0.0
        assert slope.value == pytest.approx(fd, rel=1e-5)

    def test_clipped_region_flagged(self, sched):
        budget = HouseholdBudget(income=10.0, price_H=2.0)
        slope = dshare_H_dE(sched, budget, 5.0)  # weight pinned at the upper clip
        assert slope.alpha_clipped
        # only the subsistence channel remains
        expected = -(0.97 / 10.0) * (-0.5 * gammaL_of(sched, 5.0))
        assert slope.value == pytest.approx(expected, rel=1e-13)

    def test_non_interior(self):
        with pytest.raises(NonInteriorBudget):
            dshare_H_dE(flat_sched(0.5, gamma_l=12.0), HouseholdBudget(income=10.0, price_H=2.0), 0.0)


def _random_cases(n, seed, gamma_h_zero=True):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        sched = PreferenceSchedule(
            alpha_base=rng.uniform(0.3, 0.7),
            alpha_slope=rng.uniform(0.01, 0.3),
            alpha_lo=0.01,
            alpha_hi=0.99,
            gammaL_base=rng.uniform(0.05, 5.0),
            gammaL_decay=rng.uniform(0.0, 2.0),
            gamma_H=0.0 if gamma_h_zero else rng.uniform(0.0, 1.0),
        )
        e = rng.uniform(0.0, 0.9)
        price_l = rng.uniform(0.1, 5.0)
        price_h = rng.uniform(0.1, 5.0)
        subsistence = price_l * gammaL_of(sched, e) + price_h * sched.gamma_H
        budget = HouseholdBudget(
            income=subsistence + rng.uniform(0.5, 50.0), price_H=price_h, price_L=price_l
        )
        yield sched, budget, e


class TestDemandIdentities:
    """Randomized draws of the demand-system identities (small version of the
    acceptance-criterion suite)."""

    N = 1000

    def test_budget_exhaustion_and_homogeneity(self):
        for sched, budget, e in _random_cases(self.N, seed=101, gamma_h_zero=False):
            sol = solve_demand(sched, budget, e)
            spending = budget.price_L * sol.c_L + budget.price_H * sol.c_H
            assert abs(spending - budget.income) <= 1e-12 * budget.income
            scaled = HouseholdBudget(
                income=budget.income * 7.3,
                price_H=budget.price_H * 7.3,
                price_L=budget.price_L * 7.3,
            )
            sol2 = solve_demand(sched, scaled, e)
            assert sol2.c_L == pytest.approx(sol.c_L, rel=1e-12)
            assert sol2.c_H == pytest.approx(sol.c_H, rel=1e-12)
            assert sol2.share_H == pytest.approx(sol.share_H, rel=1e-12)

    def test_engel_aggregation_and_luxury_necessity(self):
        for sched, budget, e in _random_cases(self.N, seed=202):
            sol = solve_demand(sched, budget, e)
            eta = income_elasticities(sched, budget, e)
            engel = sol.share_H * eta.eta_H + sol.share_L * eta.eta_L
            assert abs(engel - 1.0) <= 1e-12
            if gammaL_of(sched, e) > 0.0:
                assert eta.eta_H > 1.0
                assert eta.eta_L < 1.0

    def test_share_slope_positive_and_matches_fd(self):
        h = 1e-6
        for sched, budget, e in _random_cases(self.N, seed=303):
            slope = dshare_H_dE(sched, budget, e)
            assert slope.value > 0.0
            fd = (
                solve_demand(sched, budget, e + h).share_H
                - solve_demand(sched, budget, max(e - h, 0.0)).share_H
            ) / (h + min(e, h))
            assert slope.value == pytest.approx(fd, rel=1e-5)


def test_supernumerary_income(sched):
    budget = HouseholdBudget(income=10.0, price_H=2.0)
    expected = 10.0 - gammaL_of(sched, 0.3)
    assert supernumerary_income(sched, budget, 0.3) == pytest.approx(expected, rel=1e-14)
