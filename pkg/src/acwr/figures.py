"""Plot-ready data for the documentation figures.

Three emitters mirror the published illustrations: same-ratio training
profiles that rolling averages cannot tell apart, the expanded EWMA weight
curves, and initial-value convergence traces. The original daily profiles
behind the published figures were never printed, so the profiles here are
constructions matching the stated aggregates.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

from .ewma import (
    EwmaParams,
    Fixed,
    convergence_analysis,
    default_acute_params,
    default_chronic_params,
    ewma,
    weight_table,
)
from .ratios import acratio_ewma_coupled, acratio_rolling
from .timeseries import WindowConfig, WorkloadSeries

PROFILE_START = date(2024, 1, 1)  # a Monday

# Three distinct 4-week profiles: weekly totals sum to 140, final week 50.
# Integer daily loads keep weekly sums exact, so the rolling ratio is
# identical for all three while the EWMA ratios separate them.
SAME_RATIO_PROFILES: dict[str, tuple[float, ...]] = {
    "steady": (
        4, 4, 4, 4, 4, 5, 5,      # 30
        4, 4, 4, 4, 4, 5, 5,      # 30
        4, 4, 4, 4, 4, 5, 5,      # 30
        7, 7, 7, 7, 7, 7, 8,      # 50
    ),
    "ramp": (
        2, 3, 3, 3, 3, 3, 3,      # 20
        4, 4, 4, 4, 4, 5, 5,      # 30
        5, 6, 6, 6, 6, 6, 5,      # 40
        7, 7, 7, 7, 7, 7, 8,      # 50
    ),
    "spiky": (
        20, 0, 0, 25, 0, 0, 0,    # 45
        0, 15, 0, 0, 20, 0, 0,    # 35
        10, 0, 0, 0, 0, 0, 0,     # 10
        25, 0, 0, 25, 0, 0, 0,    # 50
    ),
}

# A 28-day training block starting at load 55, repeated three times for the
# convergence illustration (84 days total).
CONVERGENCE_BLOCK: tuple[float, ...] = (
    55, 40, 70, 0, 60, 45, 80,
    50, 35, 65, 0, 55, 40, 75,
    60, 45, 75, 0, 65, 50, 85,
    45, 30, 60, 0, 50, 35, 70,
)


def same_ratio_series() -> dict[str, WorkloadSeries]:
    return {
        name: WorkloadSeries(name, PROFILE_START, tuple(float(x) for x in loads))
        for name, loads in SAME_RATIO_PROFILES.items()
    }


def convergence_profile(repeats: int = 3) -> WorkloadSeries:
    return WorkloadSeries(
        "convergence", PROFILE_START, tuple(float(x) for x in CONVERGENCE_BLOCK * repeats)
    )


def same_ratio_rows() -> tuple[list[str], list[list]]:
    """Daily loads plus per-profile rolling and EWMA ratios at day 28."""
    header = [
        "profile", "day", "date", "load",
        "rolling_coupled_ratio", "ewma_coupled_ratio",
    ]
    rows = []
    window = WindowConfig()
    for name, series in same_ratio_series().items():
        rolling = acratio_rolling(series, window, series.end)
        ewma_pt = acratio_ewma_coupled(series)
        for i, (d, load) in enumerate(series.entries(), start=1):
            rows.append([
                name, i, d, float(load),
                rolling.ratio if i == len(series) else None,
                ewma_pt.ratio if i == len(series) else None,
            ])
    return header, rows


def weight_curve_rows(t: int = 28) -> tuple[list[str], list[list]]:
    """Expanded weights per day for the acute and chronic decay constants."""
    acute = weight_table(default_acute_params().lam, t)
    chronic = weight_table(default_chronic_params().lam, t)
    header = ["day", "acute_weight", "chronic_weight"]
    rows: list[list] = [[0, acute.w0, chronic.w0]]
    for i in range(1, t + 1):
        rows.append([i, acute.w[i - 1], chronic.w[i - 1]])
    return header, rows


def convergence_rows(
    e0_a: float = 55.0,
    e0_b: float = 0.0,
    epsilon: float = 1.0,
    repeats: int = 3,
) -> tuple[list[str], list[list]]:
    """EWMA traces under two initial values, with per-day differences.

    Emits acute and chronic streams plus the coupled ratio of each scenario,
    the raw material of the convergence illustration.
    """
    profile = convergence_profile(repeats)
    header = [
        "day", "date", "load",
        "acute_a", "acute_b", "chronic_a", "chronic_b",
        "ratio_a", "ratio_b", "ratio_abs_diff",
    ]
    lam_a = default_acute_params().lam
    lam_c = default_chronic_params().lam
    streams = {
        key: ewma(profile, EwmaParams(lam, initial_policy=Fixed(e0)))
        for key, (lam, e0) in {
            "aa": (lam_a, e0_a), "ab": (lam_a, e0_b),
            "ca": (lam_c, e0_a), "cb": (lam_c, e0_b),
        }.items()
    }
    rows = []
    for i, (d, load) in enumerate(profile.entries(), start=1):
        aa, ab = streams["aa"][i - 1].value, streams["ab"][i - 1].value
        ca, cb = streams["ca"][i - 1].value, streams["cb"][i - 1].value
        ratio_a = aa / ca if ca > 0 else None
        ratio_b = ab / cb if cb > 0 else None
        diff = abs(ratio_a - ratio_b) if ratio_a is not None and ratio_b is not None else None
        rows.append([i, d, float(load), aa, ab, ca, cb, ratio_a, ratio_b, diff])
    return header, rows


@dataclass(frozen=True)
class ConvergenceSummary:
    lam: float
    delta0: float
    epsilon: float
    day: int


def convergence_summary(
    e0_a: float = 55.0, e0_b: float = 0.0, epsilon: float = 1.0
) -> list[ConvergenceSummary]:
    """Analytic convergence days for the acute and chronic constants."""
    profile = convergence_profile()
    out = []
    for p in (default_acute_params(), default_chronic_params()):
        res = convergence_analysis(profile, p, e0_a, e0_b, epsilon)
        out.append(ConvergenceSummary(p.lam, e0_a - e0_b, epsilon, res.day))
    return out
