"""Ratio methods: rolling coupled/uncoupled, EWMA variants, weekly blocks."""

from datetime import date, timedelta

import numpy as np
import pytest

from acwr import (
    Coupling,
    EwmaParams,
    MethodConfig,
    RatioMethod,
    WindowConfig,
    WorkloadSeries,
    acratio_ewma_coupled,
    acratio_ewma_uncoupled,
    acratio_rolling,
    ratio_series,
    weekly_block_ratio,
)
from acwr.figures import same_ratio_series

MONDAY = date(2024, 1, 1)
UNCOUPLED = WindowConfig(coupling=Coupling.UNCOUPLED)


def weeks_to_series(weekly_totals, athlete="a1", start=MONDAY) -> WorkloadSeries:
    """One session per week (on the last day) keeps weekly sums exact."""
    loads = []
    for total in weekly_totals:
        loads.extend([0.0] * 6 + [float(total)])
    return WorkloadSeries(athlete, start, tuple(loads))


class TestRollingCoupled:
    @pytest.mark.parametrize("w", [1.0, 10.0, 1e6])
    def test_zero_history_hits_bound_exactly(self, w):
        s = weeks_to_series([0, 0, 0, w])
        p = acratio_rolling(s, WindowConfig(), s.end)
        assert p.ratio == 4.0

    def test_same_ratio_construction(self):
        s = weeks_to_series([30, 30, 30, 50])
        p = acratio_rolling(s, WindowConfig(), s.end)
        assert p.acute == 50.0
        assert p.chronic == 35.0
        assert p.ratio == pytest.approx(50 / 35, rel=1e-12)

    def test_bound_over_random_profiles(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            totals = rng.uniform(0, 100, size=4)
            s = weeks_to_series(totals)
            p = acratio_rolling(s, WindowConfig(), s.end)
            if p.ratio is not None:
                assert p.ratio <= 4.0 + 1e-12

    def test_bound_attained_only_with_zero_priors(self):
        s = weeks_to_series([1e-9, 30, 30, 50])
        p = acratio_rolling(s, WindowConfig(), s.end)
        assert p.ratio < 4.0

    def test_insufficient_history_not_yet_defined(self):
        s = weeks_to_series([10, 10, 10])
        assert acratio_rolling(s, WindowConfig(), s.end) is None

    def test_mid_series_uses_trailing_windows(self):
        s = weeks_to_series([10, 10, 10, 10, 40])
        mid = s.start + timedelta(days=27)
        p = acratio_rolling(s, WindowConfig(), mid)
        assert p.ratio == pytest.approx(1.0)

    def test_two_week_acute_window(self):
        cfg = WindowConfig(acute_weeks=2, chronic_weeks=4)
        s = weeks_to_series([10, 10, 20, 40])
        p = acratio_rolling(s, cfg, s.end)
        assert p.acute == pytest.approx(30.0)  # mean of the last two weeks
        assert p.chronic == pytest.approx(20.0)
        assert p.ratio == pytest.approx(1.5)


class TestRollingUncoupled:
    def test_zero_chronic_is_undefined(self):
        s = weeks_to_series([0, 0, 0, 0, 10])
        p = acratio_rolling(s, UNCOUPLED, s.end)
        assert p.ratio is None
        assert not p.defined
        assert "zero chronic" in p.note

    def test_no_upper_bound(self):
        s = weeks_to_series([1, 1, 1, 1, 1000])
        p = acratio_rolling(s, UNCOUPLED, s.end)
        assert p.ratio == pytest.approx(1000.0)

    def test_window_placement(self):
        s = weeks_to_series([10, 20, 30, 40, 50])
        p = acratio_rolling(s, UNCOUPLED, s.end)
        assert p.acute == 50.0
        assert p.chronic == pytest.approx(25.0)

    def test_three_week_chronic_variant(self):
        cfg = WindowConfig(chronic_weeks=3, coupling=Coupling.UNCOUPLED)
        s = weeks_to_series([99, 10, 20, 30, 60])
        p = acratio_rolling(s, cfg, s.end)
        assert p.chronic == pytest.approx(20.0)
        assert p.ratio == pytest.approx(3.0)


class TestHomogeneity:
    @pytest.mark.parametrize("c", [0.5, 3.0, 1e4])
    def test_rolling_scale_invariance(self, c):
        rng = np.random.default_rng(5)
        loads = tuple(rng.uniform(0, 10, size=35))
        s = WorkloadSeries("a1", MONDAY, loads)
        for cfg in (WindowConfig(), UNCOUPLED):
            p1 = acratio_rolling(s, cfg, s.end)
            p2 = acratio_rolling(s.scaled(c), cfg, s.end)
            assert p2.ratio == pytest.approx(p1.ratio, rel=1e-12)

    @pytest.mark.parametrize("c", [0.5, 3.0])
    def test_ewma_scale_invariance_under_first_load(self, c):
        rng = np.random.default_rng(6)
        loads = tuple(rng.uniform(1, 10, size=60))
        s = WorkloadSeries("a1", MONDAY, loads)
        p1 = acratio_ewma_coupled(s)
        p2 = acratio_ewma_coupled(s.scaled(c))
        assert p2.ratio == pytest.approx(p1.ratio, rel=1e-12)


class TestEwmaCoupled:
    def test_constant_load_ratio_one(self):
        s = WorkloadSeries("a1", MONDAY, (6.0,) * 70)
        points = ratio_series(s, MethodConfig(method=RatioMethod.EWMA_COUPLED))
        assert all(p.ratio == pytest.approx(1.0, rel=1e-12) for p in points)

    def test_burn_in_convergence_flag(self):
        s = WorkloadSeries("a1", MONDAY, (6.0,) * 70)
        points = ratio_series(s, MethodConfig(method=RatioMethod.EWMA_COUPLED))
        assert [p.converged for p in points] == [False] * 50 + [True] * 20

    def test_distinguishes_same_ratio_profiles(self):
        ratios = {
            name: acratio_ewma_coupled(s).ratio for name, s in same_ratio_series().items()
        }
        values = list(ratios.values())
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                assert abs(values[i] - values[j]) > 0.01

    def test_initial_value_scenarios_converge(self):
        # first load 55 with E0 = 55 vs E0 = 0: ratios within 0.05 by day ~50
        from acwr.figures import convergence_rows

        _, rows = convergence_rows(e0_a=55.0, e0_b=0.0)
        diffs = {row[0]: row[9] for row in rows}
        assert all(diffs[day] < 0.05 for day in range(50, 85))

    def test_zero_chronic_undefined(self):
        s = WorkloadSeries("a1", MONDAY, (0.0,) * 30)
        p = acratio_ewma_coupled(s, at=s.end)
        assert p.ratio is None


class TestEwmaUncoupled:
    def test_constant_load_ratio_one(self):
        s = WorkloadSeries("a1", MONDAY, (4.0,) * 40)
        p = acratio_ewma_uncoupled(s)
        assert p.ratio == pytest.approx(1.0, rel=1e-12)

    def test_zero_chronic_window_undefined(self):
        s = WorkloadSeries("a1", MONDAY, (0.0,) * 28 + (5.0,) * 7)
        p = acratio_ewma_uncoupled(s)
        assert p.ratio is None

    def test_spike_uses_renormalized_weight(self):
        lam = 0.25
        s = WorkloadSeries("a1", MONDAY, (3.0,) * 28 + (0.0,) * 6 + (100.0,))
        p = acratio_ewma_uncoupled(s, acute=EwmaParams(lam), chronic=EwmaParams(2 / 29))
        weights = [lam * (1 - lam) ** (7 - i) for i in range(1, 8)]
        assert p.acute == pytest.approx(100.0 * weights[-1] / sum(weights), rel=1e-12)
        assert p.chronic == pytest.approx(3.0, rel=1e-12)

    def test_requires_both_windows(self):
        s = WorkloadSeries("a1", MONDAY, (4.0,) * 34)
        assert acratio_ewma_uncoupled(s) is None  # 34 < 7 + 28


class TestWeeklyBlockRatio:
    def test_full_week_matches_rolling(self):
        s = weeks_to_series([10, 10, 10, 10])
        block = weekly_block_ratio(s, WindowConfig(), s.end)
        rolling = acratio_rolling(s, WindowConfig(), s.end)
        assert block.ratio == pytest.approx(rolling.ratio)

    def test_partial_week_censors_acute(self):
        # 2 h/day, injured after Tuesday: acute 4 h, coupled chronic (3*14+4)/4
        loads = (2.0,) * (21 + 2)
        s = WorkloadSeries("a1", MONDAY, loads)
        p = weekly_block_ratio(s, WindowConfig(), s.end)
        assert p.acute == 4.0
        assert p.chronic == pytest.approx((14.0 * 3 + 4.0) / 4)
        assert p.ratio == pytest.approx(16.0 / 46.0)

    def test_uncoupled_ignores_partial_week_in_chronic(self):
        loads = (2.0,) * (28 + 2)
        s = WorkloadSeries("a1", MONDAY, loads)
        p = weekly_block_ratio(s, UNCOUPLED, s.end)
        assert p.acute == 4.0
        assert p.chronic == pytest.approx(14.0)

    def test_insufficient_weeks_not_defined(self):
        s = WorkloadSeries("a1", MONDAY, (2.0,) * 16)
        assert weekly_block_ratio(s, WindowConfig(), s.end) is None


class TestRatioSeries:
    def test_omits_not_yet_defined_days(self):
        s = weeks_to_series([10, 10, 10, 10, 10])
        points = ratio_series(s, MethodConfig())
        assert points[0].at == s.start + timedelta(days=27)
        assert len(points) == 8

    def test_deterministic_across_runs(self):
        s = weeks_to_series([10, 20, 30, 40, 50])
        a = ratio_series(s, MethodConfig())
        b = ratio_series(s, MethodConfig())
        assert a == b
