"""Acute:chronic workload ratio variants.

Four methods are implemented: rolling weekly averages (coupled and
uncoupled) and EWMA-weighted loads (coupled over the full history per
Williams et al., or uncoupled over fixed acute/chronic windows). A ratio
with a zero chronic load is Undefined - a first-class outcome, never
coerced to 0 or infinity. "Not yet defined" (insufficient history) is a
separate signal: functions return None instead of a RatioPoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, timedelta
from enum import Enum

from .ewma import (
    EwmaParams,
    default_acute_params,
    default_chronic_params,
    ewma,
    windowed_ewma,
)
from .timeseries import Coupling, Weekday, WindowConfig, WorkloadSeries


class RatioMethod(Enum):
    ROLLING_COUPLED = "rolling_coupled"
    ROLLING_UNCOUPLED = "rolling_uncoupled"
    EWMA_COUPLED = "ewma_coupled"
    EWMA_UNCOUPLED = "ewma_uncoupled"


@dataclass(frozen=True)
class RatioPoint:
    """Dated acute load, chronic load, and their ratio.

    `ratio` is None (Undefined) when the chronic load is zero. `converged`
    is False for EWMA output still inside its burn-in window.
    """

    at: date
    acute: float
    chronic: float
    ratio: float | None
    method: RatioMethod
    converged: bool = True
    note: str = ""

    @property
    def defined(self) -> bool:
        return self.ratio is not None


RatioSeries = list[RatioPoint]


def _make_point(
    at: date,
    acute: float,
    chronic: float,
    method: RatioMethod,
    converged: bool = True,
) -> RatioPoint:
    if chronic > 0.0:
        return RatioPoint(at, acute, chronic, acute / chronic, method, converged)
    return RatioPoint(
        at, acute, chronic, None, method, converged, note="undefined: zero chronic load"
    )


# -- rolling weekly averages --------------------------------------------------


def acratio_rolling(
    series: WorkloadSeries, cfg: WindowConfig, at: date
) -> RatioPoint | None:
    """Rolling-average ratio from 7-day blocks ending at `at`.

    Acute load is the mean weekly total over the trailing acute window;
    coupled chronic averages chronic_weeks blocks including the acute ones,
    uncoupled averages the chronic_weeks blocks immediately before them.
    Returns None when the windows reach past the start of the series.
    """
    method = (
        RatioMethod.ROLLING_COUPLED
        if cfg.coupling is Coupling.COUPLED
        else RatioMethod.ROLLING_UNCOUPLED
    )
    if not series.covers(at):
        return None
    need_days = cfg.history_weeks * 7
    if series.index_of(at) + 1 < need_days:
        return None

    acute_days = cfg.acute_weeks * 7
    acute = series.window_sum(at, acute_days) / cfg.acute_weeks

    if cfg.coupling is Coupling.COUPLED:
        chronic = series.window_sum(at, cfg.chronic_weeks * 7) / cfg.chronic_weeks
    else:
        chronic_end = at - timedelta(days=acute_days)
        chronic = series.window_sum(chronic_end, cfg.chronic_weeks * 7) / cfg.chronic_weeks
    return _make_point(at, acute, chronic, method)


def weekly_block_ratio(
    series: WorkloadSeries,
    cfg: WindowConfig,
    at: date,
    week_anchor: Weekday = Weekday.MONDAY,
) -> RatioPoint | None:
    """Calendar-week ratio as used in weekly-aggregated injury studies.

    The current week runs from its anchor day through `at`, so an athlete
    whose data stops mid-week contributes a partial acute total - the
    censoring artifact the study-design tools exist to correct. Coupled
    chronic averages the current (partial) week with the prior full weeks;
    uncoupled averages only full weeks before the acute window.
    """
    method = (
        RatioMethod.ROLLING_COUPLED
        if cfg.coupling is Coupling.COUPLED
        else RatioMethod.ROLLING_UNCOUPLED
    )
    if not series.covers(at):
        return None
    week_start = at - timedelta(days=(at.weekday() - week_anchor.value) % 7)

    def full_week_total(start: date) -> float | None:
        if start < series.start or start + timedelta(days=6) > series.end:
            return None
        return series.window_sum(start + timedelta(days=6), 7)

    if week_start < series.start:
        return None
    current_partial = float(
        sum(series.loads[series.index_of(week_start) : series.index_of(at) + 1])
    )

    # acute block: current partial week plus (acute_weeks - 1) prior full weeks
    acute_totals = [current_partial]
    for k in range(1, cfg.acute_weeks):
        t = full_week_total(week_start - timedelta(days=7 * k))
        if t is None:
            return None
        acute_totals.append(t)
    acute = sum(acute_totals) / cfg.acute_weeks

    if cfg.coupling is Coupling.COUPLED:
        chronic_totals = list(acute_totals)
        first_prior = cfg.acute_weeks
        n_prior = cfg.chronic_weeks - cfg.acute_weeks
    else:
        chronic_totals = []
        first_prior = cfg.acute_weeks
        n_prior = cfg.chronic_weeks
    for k in range(first_prior, first_prior + n_prior):
        t = full_week_total(week_start - timedelta(days=7 * k))
        if t is None:
            return None
        chronic_totals.append(t)
    chronic = sum(chronic_totals) / len(chronic_totals)
    return _make_point(at, acute, chronic, method)


# -- EWMA ratios ---------------------------------------------------------------


def acratio_ewma_coupled(
    series: WorkloadSeries,
    acute: EwmaParams | None = None,
    chronic: EwmaParams | None = None,
    at: date | None = None,
) -> RatioPoint | None:
    """Ratio of the acute EWMA to the chronic EWMA, both over full history.

    This is the Williams et al. form: both streams run from the first record,
    so the measure stays coupled. Defaults are lambda(7) and lambda(28) with
    a 50-day burn-in flag.
    """
    acute = acute or default_acute_params()
    chronic = chronic or default_chronic_params()
    at = at or series.end
    if not series.covers(at):
        return None
    history = series.through(at)
    a = ewma(history, acute)[-1]
    c = ewma(history, chronic)[-1]
    return _make_point(
        at, a.value, c.value, RatioMethod.EWMA_COUPLED, a.converged and c.converged
    )


def acratio_ewma_uncoupled(
    series: WorkloadSeries,
    acute_days: int = 7,
    chronic_days: int = 28,
    acute: EwmaParams | None = None,
    chronic: EwmaParams | None = None,
    at: date | None = None,
) -> RatioPoint | None:
    """Windowed EWMA ratio: acute over the trailing `acute_days`, chronic
    over the `chronic_days` ending just before the acute window.

    Within each window the weights are renormalized to sum to 1, so the
    lam -> 0 limit recovers the plain rolling mean. Returns None without
    acute_days + chronic_days of history.
    """
    acute = acute or default_acute_params()
    chronic = chronic or default_chronic_params()
    at = at or series.end
    if not series.covers(at):
        return None
    end_i = series.index_of(at)
    if end_i + 1 < acute_days + chronic_days:
        return None
    acute_loads = list(series.loads[end_i - acute_days + 1 : end_i + 1])
    chronic_loads = list(
        series.loads[end_i - acute_days - chronic_days + 1 : end_i - acute_days + 1]
    )
    a = windowed_ewma(acute_loads, acute.lam)
    c = windowed_ewma(chronic_loads, chronic.lam)
    return _make_point(at, a, c, RatioMethod.EWMA_UNCOUPLED)


# -- unified method configuration ---------------------------------------------


@dataclass(frozen=True)
class MethodConfig:
    """Everything needed to evaluate any ratio method at a date."""

    method: RatioMethod = RatioMethod.ROLLING_COUPLED
    acute_weeks: int = 1
    chronic_weeks: int = 4
    acute_days: int = 7
    chronic_days: int = 28
    acute_ewma: EwmaParams = field(default_factory=default_acute_params)
    chronic_ewma: EwmaParams = field(default_factory=default_chronic_params)
    week_anchor: Weekday = Weekday.MONDAY

    def window_config(self) -> WindowConfig:
        coupling = (
            Coupling.COUPLED
            if self.method is RatioMethod.ROLLING_COUPLED
            else Coupling.UNCOUPLED
        )
        return WindowConfig(self.acute_weeks, self.chronic_weeks, coupling)

    def point_at(self, series: WorkloadSeries, at: date) -> RatioPoint | None:
        if self.method in (RatioMethod.ROLLING_COUPLED, RatioMethod.ROLLING_UNCOUPLED):
            return acratio_rolling(series, self.window_config(), at)
        if self.method is RatioMethod.EWMA_COUPLED:
            return acratio_ewma_coupled(series, self.acute_ewma, self.chronic_ewma, at)
        return acratio_ewma_uncoupled(
            series, self.acute_days, self.chronic_days,
            self.acute_ewma, self.chronic_ewma, at,
        )


def ratio_series(
    series: WorkloadSeries,
    cfg: MethodConfig,
    start: date | None = None,
    end: date | None = None,
) -> RatioSeries:
    """Ratio points for every date in [start, end] where the method is
    defined; not-yet-defined leading days are simply omitted."""
    start = start or series.start
    end = end or series.end

    if cfg.method is RatioMethod.EWMA_COUPLED:
        # one pass per stream instead of re-running the recursion per day
        a_stream = ewma(series, cfg.acute_ewma)
        c_stream = ewma(series, cfg.chronic_ewma)
        out: RatioSeries = []
        for a, c in zip(a_stream, c_stream):
            if start <= a.at <= end:
                out.append(
                    _make_point(
                        a.at, a.value, c.value, RatioMethod.EWMA_COUPLED,
                        a.converged and c.converged,
                    )
                )
        return out

    out = []
    cursor = start
    while cursor <= end:
        point = cfg.point_at(series, cursor)
        if point is not None:
            out.append(point)
        cursor += timedelta(days=1)
    return out
