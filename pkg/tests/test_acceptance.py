"""Acceptance suite: one test per release criterion, at pinned tolerances.

Each test prints a PASS/FAIL line so the suite reads as a checklist:

    pytest tests/test_acceptance.py -s -q
"""

import time
from contextlib import contextmanager
from datetime import date, timedelta

import numpy as np
import pytest

import acwr
from acwr import (
    CohortSpec,
    ConstantHazard,
    Coupling,
    EwmaParams,
    Mitigation,
    PlanRequest,
    SparseEvent,
    WeeklySchedule,
    WindowConfig,
    WorkloadSeries,
    acratio_ewma_coupled,
    acratio_rolling,
    apply_mitigation,
    bias_gap,
    chronic_ratio_contribution,
    convergence_analysis,
    convergence_day,
    ewma,
    initial_weight_dominates,
    max_safe_acute,
    simulate_cohort,
    sparse_audit,
    weekly_bias_report,
    weight_table,
)
from acwr.figures import convergence_profile, same_ratio_series

MONDAY = date(2024, 1, 1)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE FAIL — {name}")
        raise
    print(f"ACCEPTANCE PASS — {name}")


# Printed weight table for 28 days of activity: (lambda, w0, w1, w1 - w0).
PRINTED_WEIGHTS = [
    (0.500, 0.000000004, 0.000000004, 0.000000000),
    (0.475, 0.000000015, 0.000000013, -0.000000001),
    (0.450, 0.000000054, 0.000000044, -0.000000010),
    (0.425, 0.000000187, 0.000000138, -0.000000049),
    (0.400, 0.000000614, 0.000000409, -0.000000205),
    (0.375, 0.000001926, 0.000001156, -0.000000770),
    (0.350, 0.000005775, 0.000003110, -0.000002666),
    (0.325, 0.000016615, 0.000008000, -0.000008615),
    (0.300, 0.000045999, 0.000019714, -0.000026285),
    (0.275, 0.000122875, 0.000046608, -0.000076267),
    (0.250, 0.000317479, 0.000105826, -0.000211653),
    (0.225, 0.000795147, 0.000230849, -0.000564298),
    (0.200, 0.001934281, 0.000483570, -0.001450711),
    (0.175, 0.004578367, 0.000971169, -0.003607198),
    (0.150, 0.010561605, 0.001863813, -0.008697792),
    (0.125, 0.023780747, 0.003397250, -0.020383497),
    (0.100, 0.052334763, 0.005814974, -0.046519790),
    (0.075, 0.112711575, 0.009138776, -0.103572798),
    (0.050, 0.237826885, 0.012517204, -0.225309681),
    (0.025, 0.492185981, 0.012620153, -0.479565828),
]


def weeks_to_series(weekly_totals, start=MONDAY) -> WorkloadSeries:
    loads = []
    for total in weekly_totals:
        loads.extend([0.0] * 6 + [float(total)])
    return WorkloadSeries("acc", start, tuple(loads))


def test_weight_table_reproduction():
    """All 20 printed rows at t=28 match to 9 decimal places."""
    with criterion("weight table reproduction (20 rows, 9 decimals)"):
        for lam, w0, w1, diff in PRINTED_WEIGHTS:
            table = weight_table(lam, 28)
            assert abs(table.w0 - w0) <= 5e-10, f"w0 mismatch at lambda={lam}"
            assert abs(table.w1 - w1) <= 5e-10, f"w1 mismatch at lambda={lam}"
            assert abs(table.difference - diff) <= 5e-10, f"diff mismatch at lambda={lam}"


def test_coupled_ratio_bound():
    """Zero-prior profiles hit exactly 4 at any magnitude; never above 4."""
    with criterion("coupled rolling ratio bound"):
        for w in (1.0, 10.0, 1e6):
            point = acratio_rolling(weeks_to_series([0, 0, 0, w]), WindowConfig(), MONDAY + timedelta(days=27))
            assert point.ratio == 4.0, f"expected exact 4 at W={w}"
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            totals = rng.uniform(0.0, 1000.0, size=4)
            s = weeks_to_series(totals)
            point = acratio_rolling(s, WindowConfig(), s.end)
            if point.ratio is not None:
                assert point.ratio <= 4.0 + 1e-12


def test_planning_calculator():
    """Worked examples plus the inversion property over random inputs."""
    with criterion("planning calculator (14.4 / 13 / inversion at 1e-9)"):
        coupled = max_safe_acute(PlanRequest([10.0, 10.0, 10.0], 1.3))
        assert coupled.max_acute_load == pytest.approx(1.3 * 3 * 10 / (4 - 1.3), abs=1e-9)
        assert round(coupled.max_acute_load, 1) == 14.4  # as printed
        assert coupled.achieved_ratio_check == pytest.approx(1.3, abs=1e-9)

        uncoupled = max_safe_acute(
            PlanRequest([10.0] * 4, 1.3, coupling=Coupling.UNCOUPLED)
        )
        assert uncoupled.max_acute_load == 13.0

        rng = np.random.default_rng(777)
        for _ in range(1000):
            w = int(rng.integers(2, 9))
            coupled_mode = bool(rng.integers(0, 2))
            n_priors = w - 1 if coupled_mode else w
            priors = list(rng.uniform(0.1, 500.0, size=n_priors))
            r = float(rng.uniform(0.05, w - 0.01)) if coupled_mode else float(rng.uniform(0.05, 8.0))
            res = max_safe_acute(
                PlanRequest(
                    priors, r,
                    coupling=Coupling.COUPLED if coupled_mode else Coupling.UNCOUPLED,
                    chronic_weeks=w,
                )
            )
            assert abs(res.achieved_ratio_check - r) <= 1e-9


def test_ewma_equivalences():
    """Recursion == weight-table inner product; weights normalize to 1."""
    with criterion("EWMA closed-form equivalence and weight normalization"):
        rng = np.random.default_rng(42)
        lam_grid = [x / 1000 for x in range(25, 501, 25)]
        tables = {lam: weight_table(lam, 365) for lam in lam_grid}
        for i in range(500):
            loads = rng.uniform(0.0, 100.0, size=365)
            lam = lam_grid[i % len(lam_grid)]
            e0 = float(rng.uniform(0.0, 100.0))
            series = WorkloadSeries("acc", MONDAY, tuple(loads))
            recursive = ewma(series, EwmaParams(lam, initial_policy=acwr.Fixed(e0)))[-1].value
            table = tables[lam]
            closed = table.w0 * e0 + float(np.dot(np.asarray(table.w), loads))
            assert abs(recursive - closed) <= 1e-10

        for lam in lam_grid:
            for t in (7, 28, 100):
                assert abs(weight_table(lam, t).total() - 1.0) <= 1e-12


def test_initial_value_theorems():
    """w0 > w1 iff lambda < 1/2; chronic contribution reproduces the ~1.9x."""
    with criterion("initial-value dominance and chronic contribution"):
        for lam, *_ in PRINTED_WEIGHTS:
            table = weight_table(lam, 28)
            assert initial_weight_dominates(lam) == (table.w0 > table.w1)
            assert initial_weight_dominates(lam) == (lam < 0.5)

        value = chronic_ratio_contribution(2 / 29, 28)
        assert value == pytest.approx((27 / 29) ** 28 / (2 / 29), rel=1e-12)
        # printed as "1.9 times"; the exact value is 1.9607, within 5% relative
        assert abs(value - 1.9) / 1.9 <= 0.05


def test_convergence():
    """Decay identity, the analytic day-57 result, and the epsilon band."""
    with criterion("initial-value convergence (decay identity, day 57, band)"):
        profile = convergence_profile()
        res = convergence_analysis(profile, EwmaParams(2 / 29), 55.0, 0.0, 1.0)
        assert res.max_trace_error <= 1e-9  # identity holds to float precision
        assert res.day == 57
        assert 40 <= res.day <= 60

        # the published ~55-day figure sits inside the band of analytic days
        # swept over plausible epsilon
        band = [convergence_day(2 / 29, 55.0, eps) for eps in (2.0, 1.5, 1.0, 0.75, 0.5)]
        assert band == sorted(band)
        assert band[0] <= 55 <= band[-1]


def test_same_ratio_phenomenon():
    """Distinct profiles identical under rolling, separated by EWMA."""
    with criterion("same-ratio profiles (rolling identical, EWMA distinct)"):
        rolling_points = []
        ewma_ratios = []
        for name, series in same_ratio_series().items():
            assert sum(series.loads) == 140.0
            point = acratio_rolling(series, WindowConfig(), series.end)
            rolling_points.append(point)
            ewma_ratios.append(acratio_ewma_coupled(series).ratio)
        for point in rolling_points:
            assert point.acute == 50.0
            assert point.chronic == 35.0
            assert point.ratio == pytest.approx(50 / 35, rel=1e-12)
        for i in range(len(ewma_ratios)):
            for j in range(i + 1, len(ewma_ratios)):
                assert abs(ewma_ratios[i] - ewma_ratios[j]) > 0.01


def test_bias_demonstration():
    """10k athletes: injured mean below uninjured by >3 SE; mitigations halve it."""
    with criterion("early-injury bias demonstration and mitigation (10k cohort)"):
        started = time.monotonic()
        spec = CohortSpec(
            10_000, (WeeklySchedule((1.0,) * 7),), ConstantHazard(0.01), 12,
            seed=20240101,
        )
        outcomes = simulate_cohort(spec)
        report = weekly_bias_report(outcomes)
        assert report.difference < 0
        assert report.difference < -3 * report.difference_se

        gap_a, _ = bias_gap(apply_mitigation(outcomes, Mitigation.SUBSEQUENT_WEEK))
        gap_f, _ = bias_gap(apply_mitigation(outcomes, Mitigation.PROPORTIONAL_CENSORING))
        assert abs(gap_a) <= 0.5 * abs(report.difference)
        assert abs(gap_f) <= 0.5 * abs(report.difference)

        elapsed = time.monotonic() - started
        assert elapsed < 10.0, f"bias demonstration took {elapsed:.1f}s"


def test_worked_example_end_to_end():
    """2 h/1 h pair: acute totals 4 h and 7 h; censored comparator 2 h."""
    with criterion("worked two-athlete example (4 h / 7 h / censored 2 h)"):
        history = (2.0,) * 28
        planned_case = WorkloadSeries("case", MONDAY, history + (2.0,) * 7)
        planned_ctrl = WorkloadSeries("ctrl", MONDAY, history + (1.0,) * 7)
        injury_day = MONDAY + timedelta(days=29)  # Tuesday of the current week
        outcomes = [
            acwr.AthleteOutcome(
                "case", planned_case, planned_case.through(injury_day),
                WeeklySchedule((2.0,) * 7), injury_day, 2 / 7,
            ),
            acwr.AthleteOutcome("ctrl", planned_ctrl, planned_ctrl, WeeklySchedule((1.0,) * 7)),
        ]
        week_start = MONDAY + timedelta(days=28)
        case_acute = sum(
            outcomes[0].realized.loads[outcomes[0].realized.index_of(week_start):]
        )
        ctrl_acute = sum(
            outcomes[1].realized.loads[outcomes[1].realized.index_of(week_start):][:7]
        )
        assert case_acute == 4.0
        assert ctrl_acute == 7.0

        records = apply_mitigation(outcomes, Mitigation.PROPORTIONAL_CENSORING)
        censored = next(r for r in records if r.athlete_id == "ctrl")
        assert censored.exposure.acute == 2.0  # 2/7 x 7 hours


def test_sparse_audit():
    """[5,5,5] passes, [4,6,5] fails; uninjured rows never change verdicts."""
    with criterion("sparse-data audit (5-per-cell rule)"):
        def events(counts, uninjured=0):
            out = []
            for level, n in counts.items():
                out.extend(SparseEvent((), level, True) for _ in range(n))
                out.extend(SparseEvent((), level, False) for _ in range(uninjured))
            return out

        levels = ["low", "medium", "high"]
        assert sparse_audit(events({"low": 5, "medium": 5, "high": 5}), levels).passed
        failing = sparse_audit(events({"low": 4, "medium": 6, "high": 5}), levels)
        assert not failing.passed
        padded = sparse_audit(
            events({"low": 4, "medium": 6, "high": 5}, uninjured=1000), levels
        )
        assert padded.passed == failing.passed
        assert [c.events for c in padded.cells] == [c.events for c in failing.cells]


def test_determinism(tmp_path):
    """simulate and compute are byte-identical across runs and parallelism."""
    with criterion("byte-identical simulate/compute determinism"):
        import json

        from acwr.cli import main
        from acwr.config import config_to_json, default_config

        doc = config_to_json(default_config())
        doc["cohort"]["n_athletes"] = 500
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(doc))

        runs = []
        for name, extra in (("s1", []), ("s2", []), ("p1", ["--parallel"])):
            out = tmp_path / f"{name}.csv"
            assert main(["simulate", "--config", str(config_path), "--out", str(out), *extra]) == 0
            runs.append(out.read_bytes())
        assert runs[0] == runs[1] == runs[2]

        log = tmp_path / "log.csv"
        lines = ["athlete_id,date,load,planned"]
        for i in range(42):
            lines.append(f"a1,{(MONDAY + timedelta(days=i)).isoformat()},{(i * 3) % 11}.0,0")
        log.write_text("\n".join(lines) + "\n")
        compute_runs = []
        for name in ("c1", "c2"):
            out = tmp_path / f"{name}.csv"
            assert main(["compute", "--input", str(log), "--out", str(out)]) == 0
            compute_runs.append(out.read_bytes())
        assert compute_runs[0] == compute_runs[1]
