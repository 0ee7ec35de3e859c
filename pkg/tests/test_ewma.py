"""EWMA recursion, weight algebra, and initial-value convergence."""

from datetime import date

import numpy as np
import pytest

from acwr import (
    BurnIn,
    EwmaParams,
    Fixed,
    FirstLoad,
    WorkloadSeries,
    Zero,
    chronic_ratio_contribution,
    convergence_analysis,
    convergence_day,
    ewma,
    initial_weight_dominates,
    lambda_from_n,
    weight_table,
    windowed_ewma,
)

START = date(2024, 1, 1)


def series(loads) -> WorkloadSeries:
    return WorkloadSeries("a1", START, tuple(float(x) for x in loads))


class TestLambdaFromN:
    def test_acute_window(self):
        assert lambda_from_n(7) == 0.25

    def test_chronic_window(self):
        assert lambda_from_n(28) == 2 / 29
        assert round(lambda_from_n(28), 3) == 0.069  # paper prints 0.068 truncated

    def test_no_memory(self):
        assert lambda_from_n(1) == 1.0

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            lambda_from_n(0)


class TestEwmaParams:
    def test_lambda_must_match_n(self):
        with pytest.raises(ValueError):
            EwmaParams(0.25, n_source=28)

    def test_from_n_stores_exact_lambda(self):
        assert EwmaParams.from_n(28).lam == 2 / 29

    def test_lambda_bounds(self):
        with pytest.raises(ValueError):
            EwmaParams(0.0)
        with pytest.raises(ValueError):
            EwmaParams(1.5)


class TestEwmaRecursion:
    def test_lambda_one_tracks_loads(self):
        loads = [3, 1, 4, 1, 5, 9, 2, 6]
        out = ewma(series(loads), EwmaParams(1.0, initial_policy=Zero()))
        assert [p.value for p in out] == [float(x) for x in loads]

    def test_small_lambda_stays_near_initial(self):
        out = ewma(series([9] * 30), EwmaParams(1e-9, initial_policy=Fixed(2.0)))
        assert out[-1].value == pytest.approx(2.0, abs=1e-6)

    def test_constant_load_is_fixed_point(self):
        out = ewma(series([6.0] * 40), EwmaParams(0.25, initial_policy=Fixed(6.0)))
        assert all(p.value == pytest.approx(6.0, rel=1e-12) for p in out)

    def test_first_load_consumes_first_record(self):
        out = ewma(series([55, 10]), EwmaParams(0.25, initial_policy=FirstLoad()))
        assert out[0].value == 55.0
        assert out[1].value == pytest.approx(0.25 * 10 + 0.75 * 55)

    def test_first_load_equals_fixed_at_first_value(self):
        loads = [55, 10, 20, 30]
        a = ewma(series(loads), EwmaParams(0.25, initial_policy=FirstLoad()))
        b = ewma(series(loads), EwmaParams(0.25, initial_policy=Fixed(55.0)))
        assert [p.value for p in a] == [p.value for p in b]

    def test_burn_in_flags_first_outputs(self):
        out = ewma(series([5] * 10), EwmaParams(0.25, initial_policy=BurnIn(4)))
        assert [p.converged for p in out] == [False] * 4 + [True] * 6

    def test_one_output_per_day(self):
        out = ewma(series([1, 2, 3]), EwmaParams(0.5))
        assert [p.at for p in out] == series([1, 2, 3]).dates()

    def test_closed_form_equivalence(self):
        # recursive output must match the weight-table inner product
        rng = np.random.default_rng(7)
        loads = rng.uniform(0, 100, size=365)
        lam = 2 / 29
        out = ewma(series(loads), EwmaParams(lam, initial_policy=Fixed(42.0)))
        table = weight_table(lam, 365)
        expected = table.w0 * 42.0 + sum(w * l for w, l in zip(table.w, loads))
        assert out[-1].value == pytest.approx(expected, abs=1e-10)


class TestWindowedEwma:
    def test_single_spike_renormalized_weight(self):
        # independent oracle: hand-built 7-term weight sum
        lam = 0.25
        weights = [lam * (1 - lam) ** (7 - i) for i in range(1, 8)]
        expected = 100.0 * weights[-1] / sum(weights)
        got = windowed_ewma([0, 0, 0, 0, 0, 0, 100.0], lam)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(100.0 * 0.25 / (1 - 0.75**7), rel=1e-12)

    def test_small_lambda_reduces_to_mean(self):
        loads = [1.0, 2.0, 3.0, 4.0]
        assert windowed_ewma(loads, 1e-10) == pytest.approx(2.5, rel=1e-6)

    def test_constant_loads(self):
        assert windowed_ewma([5.0] * 7, 0.25) == pytest.approx(5.0, rel=1e-12)


class TestWeightTable:
    def test_printed_chronic_anomaly_row(self):
        t = weight_table(0.25, 28)
        assert t.w0 == pytest.approx(0.000317479, abs=5e-10)
        assert t.w1 == pytest.approx(0.000105826, abs=5e-10)
        assert t.difference == pytest.approx(-0.000211653, abs=5e-10)

    def test_half_lambda_weights_equal(self):
        t = weight_table(0.5, 28)
        assert t.w0 == t.w1
        assert t.difference == 0.0

    def test_near_zero_lambda_initial_dominates(self):
        t = weight_table(0.025, 28)
        assert t.w0 == pytest.approx(0.492185981, abs=5e-10)
        assert t.w1 == pytest.approx(0.012620153, abs=5e-10)

    @pytest.mark.parametrize("lam", [x / 40 for x in range(1, 20)])
    @pytest.mark.parametrize("t", [7, 28, 100])
    def test_normalization(self, lam, t):
        assert weight_table(lam, t).total() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("lam", [0.1, 0.25, 0.5, 0.9])
    def test_monotone_daily_weights(self, lam):
        w = weight_table(lam, 28).w
        assert all(a < b for a, b in zip(w, w[1:]))

    def test_rejects_degenerate_lambda(self):
        with pytest.raises(ValueError):
            weight_table(0.0, 28)
        with pytest.raises(ValueError):
            weight_table(1.0, 28)


class TestInitialWeightDominates:
    def test_acute_constant(self):
        assert initial_weight_dominates(0.25) is True

    def test_equality_is_not_dominance(self):
        assert initial_weight_dominates(0.5) is False

    def test_fast_decay(self):
        assert initial_weight_dominates(0.75) is False

    @pytest.mark.parametrize("lam", [x / 1000 for x in range(25, 501, 25)])
    def test_matches_weight_table_on_grid(self, lam):
        t = weight_table(lam, 28)
        assert initial_weight_dominates(lam) == (t.w0 > t.w1)


class TestChronicContribution:
    def test_chronic_window_anomaly(self):
        # (27/29)^28 / (2/29): the initial value outweighs the newest day ~2x
        value = chronic_ratio_contribution(2 / 29, 28)
        assert value == pytest.approx((27 / 29) ** 28 / (2 / 29), rel=1e-12)
        assert value == pytest.approx(1.9, rel=0.05)

    def test_single_step_parity(self):
        assert chronic_ratio_contribution(0.5, 1) == pytest.approx(1.0)

    def test_acute_constant_negligible(self):
        assert chronic_ratio_contribution(0.25, 28) == pytest.approx(
            0.75**28 / 0.25, rel=1e-12
        )


class TestConvergence:
    def test_decay_identity_exact(self):
        rng = np.random.default_rng(11)
        loads = rng.uniform(0, 80, size=120)
        res = convergence_analysis(series(loads), EwmaParams(2 / 29), 55.0, 0.0, 1.0)
        assert res.max_trace_error < 1e-9

    def test_chronic_constant_day_57(self):
        # analytic oracle: smallest t with (27/29)^t * 55 < 1
        t = 0
        while (27 / 29) ** t * 55 >= 1.0:
            t += 1
        assert t == 57
        assert convergence_day(2 / 29, 55.0, 1.0) == 57

    def test_acute_constant_day_14(self):
        t = 0
        while 0.75**t * 55 >= 1.0:
            t += 1
        assert t == 14
        assert convergence_day(0.25, 55.0, 1.0) == 14

    def test_equal_initials_converge_immediately(self):
        res = convergence_analysis(series([5] * 10), EwmaParams(0.25), 7.0, 7.0, 1.0)
        assert res.day == 0

    def test_day_matches_trace(self):
        loads = [50.0] * 80
        res = convergence_analysis(series(loads), EwmaParams(2 / 29), 55.0, 0.0, 1.0)
        below = [t for t, d in enumerate(res.trace) if abs(d) < 1.0]
        assert below[0] == res.day

    def test_rejects_nonpositive_epsilon(self):
        with pytest.raises(ValueError):
            convergence_day(0.25, 55.0, 0.0)
