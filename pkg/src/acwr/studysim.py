"""Synthetic cohorts demonstrating (and correcting) early-injury bias.

Weekly aggregation censors injured athletes mid-week: whoever gets hurt on
Tuesday logs two days of acute load while uninjured teammates log seven, so
injury associates with low ratios even under a load-independent hazard.
This module simulates such cohorts deterministically, reports the bias, and
implements the correction strategies: subsequent-week attribution, two-week
acute averages, daily moving averages, proportional censoring of
comparators, planned-schedule proxies, nested case-control matching, and
case-crossover records.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date, timedelta
from enum import Enum
from statistics import fmean, pstdev
from typing import Protocol

import numpy as np

from .ratios import (
    MethodConfig,
    RatioMethod,
    RatioPoint,
    acratio_rolling,
    weekly_block_ratio,
)
from .timeseries import (
    Weekday,
    WindowConfig,
    WorkloadSeries,
    rolling_daily_mean,
)


# -- cohort specification -----------------------------------------------------


@dataclass(frozen=True)
class WeeklySchedule:
    """Planned daily loads for one training week, anchor day first."""

    daily_loads: tuple[float, ...]

    def __post_init__(self):
        if len(self.daily_loads) != 7:
            raise ValueError("a weekly schedule holds exactly 7 daily loads")
        if any(l < 0 for l in self.daily_loads):
            raise ValueError("loads must be nonnegative")

    @property
    def weekly_total(self) -> float:
        return float(sum(self.daily_loads))

    def training_days(self) -> list[int]:
        return [i for i, l in enumerate(self.daily_loads) if l > 0]


class HazardModel(Protocol):
    """Per-session injury probability from that day's load (and ratio)."""

    needs_ratio: bool

    def probability(self, load: float, ratio: RatioPoint | None) -> float: ...


@dataclass(frozen=True)
class ConstantHazard:
    """Load-independent hazard: same probability on every training day."""

    p: float
    needs_ratio: bool = False

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("hazard probability must lie in [0, 1]")

    def probability(self, load: float, ratio: RatioPoint | None) -> float:
        return self.p


@dataclass(frozen=True)
class LinearHazard:
    """base + per_load * load + per_ratio * ratio, clipped into [0, 1]."""

    base: float
    per_load: float = 0.0
    per_ratio: float = 0.0

    @property
    def needs_ratio(self) -> bool:
        return self.per_ratio != 0.0

    def probability(self, load: float, ratio: RatioPoint | None) -> float:
        p = self.base + self.per_load * load
        if self.per_ratio and ratio is not None and ratio.ratio is not None:
            p += self.per_ratio * ratio.ratio
        return min(1.0, max(0.0, p))


@dataclass(frozen=True)
class ScriptedInjury:
    """Deterministic hazard: injure on the k-th training day.

    With `athletes` set, only those athlete indices are injured; everyone
    else completes the horizon. Meant for worked-example fixtures.
    """

    on_training_day: int  # 1-based count of positive-load days
    athletes: tuple[int, ...] | None = None
    needs_ratio: bool = False

    def probability(self, load: float, ratio: RatioPoint | None) -> float:
        raise NotImplementedError("scripted hazards are resolved by the simulator")

    def applies_to(self, index: int) -> bool:
        return self.athletes is None or index in self.athletes


@dataclass(frozen=True)
class CohortSpec:
    """Everything that determines a simulated cohort, seed included.

    `schedules` holds either one schedule shared by every athlete or one
    per athlete. The start date must fall on the week anchor so calendar
    weeks line up with training weeks.
    """

    n_athletes: int
    schedules: tuple[WeeklySchedule, ...]
    hazard: HazardModel
    horizon_weeks: int
    seed: int
    start: date = date(2024, 1, 1)  # a Monday
    week_anchor: Weekday = Weekday.MONDAY

    def __post_init__(self):
        if self.n_athletes < 1:
            raise ValueError("need at least one athlete")
        if self.horizon_weeks < 1:
            raise ValueError("horizon must be at least one week")
        if len(self.schedules) not in (1, self.n_athletes):
            raise ValueError("give one schedule for all athletes or one each")
        if self.start.weekday() != self.week_anchor.value:
            raise ValueError("cohort start must fall on the week anchor")

    def schedule_for(self, index: int) -> WeeklySchedule:
        return self.schedules[0] if len(self.schedules) == 1 else self.schedules[index]


@dataclass(frozen=True)
class AthleteOutcome:
    """Planned and realized series, truncated at the first injury if any.

    The realized series is always a prefix of the plan (athletes train as
    scheduled until injury or censoring); an injury day, when present, is
    the last realized day and its load counts in full (end-of-day injury).
    """

    athlete_id: str
    planned: WorkloadSeries
    realized: WorkloadSeries
    schedule: WeeklySchedule
    injury_day: date | None = None
    injury_fraction_of_week: float | None = None

    def __post_init__(self):
        if self.realized.start != self.planned.start:
            raise ValueError("realized and planned series must start together")
        if self.realized.loads != self.planned.loads[: len(self.realized)]:
            raise ValueError("realized loads must be a prefix of the plan")
        if self.injury_day is not None and self.realized.end != self.injury_day:
            raise ValueError("realized data must end on the injury day")

    @property
    def injured(self) -> bool:
        return self.injury_day is not None

    @property
    def data_end(self) -> date:
        return self.realized.end

    def censored_at(self, day: date) -> "AthleteOutcome":
        """Copy with realized data cut at `day` (for time-matched designs)."""
        return replace(self, realized=self.realized.through(day))


def _athlete_id(index: int, width: int) -> str:
    return f"A{index:0{width}d}"


def _simulate_one(
    spec: CohortSpec, index: int, uniforms: np.ndarray, ratio_cfg: MethodConfig
) -> AthleteOutcome:
    schedule = spec.schedule_for(index)
    n_days = spec.horizon_weeks * 7
    planned_loads = tuple(schedule.daily_loads[i % 7] for i in range(n_days))
    athlete_id = _athlete_id(index, max(4, len(str(spec.n_athletes))))
    planned = WorkloadSeries(athlete_id, spec.start, planned_loads)

    scripted = spec.hazard if isinstance(spec.hazard, ScriptedInjury) else None
    draw = 0
    training_day_count = 0
    injury_i: int | None = None
    for i, load in enumerate(planned_loads):
        if load <= 0.0:
            continue
        training_day_count += 1
        if scripted is not None:
            if scripted.applies_to(index) and training_day_count == scripted.on_training_day:
                injury_i = i
                break
            continue
        ratio = None
        if spec.hazard.needs_ratio:
            ratio = ratio_cfg.point_at(planned, spec.start + timedelta(days=i))
        p = spec.hazard.probability(load, ratio)
        u = uniforms[draw]
        draw += 1
        if u < p:
            injury_i = i
            break

    if injury_i is None:
        return AthleteOutcome(athlete_id, planned, planned, schedule)

    injury_day = spec.start + timedelta(days=injury_i)
    realized = planned.through(injury_day)  # injury ends the day, load included
    week_day = injury_i % 7
    sched_days = schedule.training_days()
    elapsed = sum(1 for d in sched_days if d <= week_day)
    fraction = elapsed / len(sched_days) if sched_days else None
    return AthleteOutcome(
        athlete_id, planned, realized, schedule, injury_day, fraction
    )


def simulate_cohort(
    spec: CohortSpec,
    ratio_cfg: MethodConfig | None = None,
    parallel: bool = False,
) -> list[AthleteOutcome]:
    """Run every athlete until first injury or horizon end.

    Each athlete draws from a substream spawned from the cohort seed, so
    results are bit-identical regardless of execution order or parallelism.
    """
    ratio_cfg = ratio_cfg or MethodConfig()
    children = np.random.SeedSequence(spec.seed).spawn(spec.n_athletes)
    n_draws = spec.horizon_weeks * 7

    def run(i: int) -> AthleteOutcome:
        uniforms = np.random.default_rng(children[i]).random(n_draws)
        return _simulate_one(spec, i, uniforms, ratio_cfg)

    if not parallel:
        return [run(i) for i in range(spec.n_athletes)]

    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor() as pool:
        return list(pool.map(run, range(spec.n_athletes)))


# -- raw exposures and the bias report ----------------------------------------


class Mitigation(Enum):
    SUBSEQUENT_WEEK = "subsequent_week"
    TWO_WEEK_ACUTE = "two_week_acute"
    DAILY_MOVING_AVERAGE = "daily_moving_average"
    PROPORTIONAL_CENSORING = "proportional_censoring"
    PLANNED_PROXY = "planned_proxy"


@dataclass(frozen=True)
class ExposureRecord:
    """One athlete's exposure ratio paired with their injury indicator.

    `exposure_end` is the last day of data the exposure window may touch;
    construction audits compare it against `data_end`.
    """

    athlete_id: str
    at: date
    exposure: RatioPoint
    injured: bool
    strategy: Mitigation | None
    exposure_end: date
    data_end: date
    note: str = ""


@dataclass(frozen=True)
class WeekdayStratum:
    weekday: int  # 0 = anchor day
    count: int
    mean_ratio: float


@dataclass(frozen=True)
class BiasReport:
    """Mean current-week ratio among injured vs uninjured athletes.

    Means are None when a stratum is empty; the degeneracy is flagged in
    `notes` rather than raised, so no-injury cohorts still report.
    """

    injured_mean: float | None
    uninjured_mean: float | None
    difference: float | None  # injured - uninjured
    difference_se: float | None
    n_injured: int
    n_uninjured: int
    injured_by_weekday: tuple[WeekdayStratum, ...]
    skipped: int = 0  # athletes without enough history for a ratio
    notes: tuple[str, ...] = ()


def _last_full_week_end(outcome: AthleteOutcome, anchor: Weekday) -> date:
    """Last day of the final complete anchor week of realized data."""
    end = outcome.realized.end
    offset = (end.weekday() - anchor.value) % 7
    if offset == 6:
        return end
    return end - timedelta(days=offset + 1)


def _exposure_date(outcome: AthleteOutcome, anchor: Weekday) -> date:
    if outcome.injured:
        return outcome.injury_day
    return _last_full_week_end(outcome, anchor)


def raw_exposures(
    outcomes: list[AthleteOutcome], cfg: MethodConfig
) -> list[ExposureRecord]:
    """Current-week ratios exactly as a weekly-aggregated study would take
    them: injured athletes at their (partial) injury week, uninjured ones at
    the last full week."""
    if cfg.method not in (RatioMethod.ROLLING_COUPLED, RatioMethod.ROLLING_UNCOUPLED):
        raise ValueError("weekly exposures are defined for the rolling methods")
    records = []
    for o in outcomes:
        at = _exposure_date(o, cfg.week_anchor)
        point = weekly_block_ratio(o.realized, cfg.window_config(), at, cfg.week_anchor)
        if point is None:
            continue
        records.append(
            ExposureRecord(o.athlete_id, at, point, o.injured, None, at, o.data_end)
        )
    return records


def _mean_defined(records: list[ExposureRecord]) -> tuple[float, float, int]:
    values = [r.exposure.ratio for r in records if r.exposure.ratio is not None]
    if not values:
        raise ValueError("no defined ratios in stratum")
    return fmean(values), pstdev(values), len(values)


def bias_gap(records: list[ExposureRecord]) -> tuple[float, float]:
    """(injured mean - uninjured mean, standard error of the difference)."""
    injured = [r for r in records if r.injured]
    uninjured = [r for r in records if not r.injured]
    if not injured or not uninjured:
        raise ValueError("need both injured and uninjured records")
    mi, si, ni = _mean_defined(injured)
    mu, su, nu = _mean_defined(uninjured)
    se = (si**2 / ni + su**2 / nu) ** 0.5
    return mi - mu, se


def weekly_bias_report(
    outcomes: list[AthleteOutcome], cfg: MethodConfig | None = None
) -> BiasReport:
    """Quantify the early-injury artifact on raw weekly exposures."""
    cfg = cfg or MethodConfig()
    records = raw_exposures(outcomes, cfg)
    injured = [r for r in records if r.injured]
    uninjured = [r for r in records if not r.injured]
    notes = []
    if not injured:
        notes.append("empty injured stratum; means unavailable")
    if not uninjured:
        notes.append("empty uninjured stratum; means unavailable")

    mi = si = mu = su = None
    ni, nu = len(injured), len(uninjured)
    if injured:
        mi, si, ni = _mean_defined(injured)
    if uninjured:
        mu, su, nu = _mean_defined(uninjured)
    have_both = mi is not None and mu is not None
    se = (si**2 / ni + su**2 / nu) ** 0.5 if have_both else None

    by_weekday = []
    anchor = cfg.week_anchor
    for wd in range(7):
        stratum = [
            r.exposure.ratio
            for r in injured
            if (r.at.weekday() - anchor.value) % 7 == wd and r.exposure.ratio is not None
        ]
        if stratum:
            by_weekday.append(WeekdayStratum(wd, len(stratum), fmean(stratum)))

    return BiasReport(
        injured_mean=mi,
        uninjured_mean=mu,
        difference=(mi - mu) if have_both else None,
        difference_se=se,
        n_injured=ni,
        n_uninjured=nu,
        injured_by_weekday=tuple(by_weekday),
        skipped=len(outcomes) - len(records),
        notes=tuple(notes),
    )


# -- mitigation strategies ----------------------------------------------------


def apply_mitigation(
    outcomes: list[AthleteOutcome],
    strategy: Mitigation,
    cfg: MethodConfig | None = None,
    include_current_day: bool = False,
) -> list[ExposureRecord]:
    """Exposure/outcome records under one of the correction schemes.

    subsequent_week: injury in week k is attributed to the ratio at the end
    of week k-1, so every exposure window is a complete week.
    two_week_acute: the acute load averages the current and prior week.
    daily_moving_average: daily-window ratio at the injury day (or the day
    before, unless include_current_day).
    proportional_censoring: uninjured comparators' current week is cut at
    their assigned case's elapsed-schedule fraction.
    planned_proxy: planned loads stand in for realized ones, immune to
    injury truncation.
    """
    cfg = cfg or MethodConfig()
    if strategy is Mitigation.SUBSEQUENT_WEEK:
        return _subsequent_week(outcomes, cfg)
    if strategy is Mitigation.TWO_WEEK_ACUTE:
        return _two_week_acute(outcomes, cfg)
    if strategy is Mitigation.DAILY_MOVING_AVERAGE:
        return _daily_moving_average(outcomes, cfg, include_current_day)
    if strategy is Mitigation.PROPORTIONAL_CENSORING:
        return _proportional_censoring(outcomes, cfg)
    if strategy is Mitigation.PLANNED_PROXY:
        return _planned_proxy(outcomes, cfg)
    raise ValueError(f"unknown mitigation {strategy!r}")


def _subsequent_week(
    outcomes: list[AthleteOutcome], cfg: MethodConfig
) -> list[ExposureRecord]:
    records = []
    for o in outcomes:
        anchor = cfg.week_anchor
        if o.injured:
            week_start = o.injury_day - timedelta(
                days=(o.injury_day.weekday() - anchor.value) % 7
            )
            at = week_start - timedelta(days=1)  # end of the prior week
        else:
            at = _last_full_week_end(o, anchor)
        if at < o.realized.start:
            continue
        point = weekly_block_ratio(o.realized, cfg.window_config(), at, anchor)
        if point is None:
            continue
        records.append(
            ExposureRecord(
                o.athlete_id, at, point, o.injured,
                Mitigation.SUBSEQUENT_WEEK, at, o.data_end,
            )
        )
    return records


def _two_week_acute(
    outcomes: list[AthleteOutcome], cfg: MethodConfig
) -> list[ExposureRecord]:
    window = WindowConfig(
        acute_weeks=2,
        chronic_weeks=max(cfg.chronic_weeks, 3),
        coupling=cfg.window_config().coupling,
    )
    records = []
    for o in outcomes:
        at = _exposure_date(o, cfg.week_anchor)
        point = weekly_block_ratio(o.realized, window, at, cfg.week_anchor)
        if point is None:
            continue
        records.append(
            ExposureRecord(
                o.athlete_id, at, point, o.injured,
                Mitigation.TWO_WEEK_ACUTE, at, o.data_end,
            )
        )
    return records


def _daily_moving_average(
    outcomes: list[AthleteOutcome], cfg: MethodConfig, include_current_day: bool
) -> list[ExposureRecord]:
    records = []
    for o in outcomes:
        at = o.injury_day if o.injured else o.realized.end
        if not include_current_day:
            at = at - timedelta(days=1)
        if not o.realized.covers(at):
            continue
        acute = rolling_daily_mean(o.realized, cfg.acute_days, at)
        chronic = rolling_daily_mean(o.realized, cfg.chronic_days, at)
        if acute is None or chronic is None:
            continue
        ratio = acute / chronic if chronic > 0 else None
        point = RatioPoint(
            at, acute, chronic, ratio, RatioMethod.ROLLING_COUPLED,
            note=f"daily moving averages {cfg.acute_days}/{cfg.chronic_days}",
        )
        note = "acute window includes the exposure day" if include_current_day else ""
        records.append(
            ExposureRecord(
                o.athlete_id, at, point, o.injured,
                Mitigation.DAILY_MOVING_AVERAGE, at, o.data_end, note,
            )
        )
    return records


def _proportional_censoring(
    outcomes: list[AthleteOutcome], cfg: MethodConfig
) -> list[ExposureRecord]:
    """Censor each uninjured comparator's week at a case's elapsed fraction.

    Comparators are assigned to cases round-robin in athlete-id order. The
    scheme assumes daily activity is spread evenly through the week; the
    assumption travels in each record's note.
    """
    cases = sorted(
        (o for o in outcomes if o.injured), key=lambda o: (o.injury_day, o.athlete_id)
    )
    if not cases:
        return []
    records = []
    usable_cases = []  # cases whose censoring point has a defined ratio
    anchor = cfg.week_anchor
    for o in cases:
        point = weekly_block_ratio(
            o.realized, cfg.window_config(), o.injury_day, anchor
        )
        if point is None:
            continue
        usable_cases.append(o)
        records.append(
            ExposureRecord(
                o.athlete_id, o.injury_day, point, True,
                Mitigation.PROPORTIONAL_CENSORING, o.injury_day, o.data_end,
                note="assumes equal daily activity through the week",
            )
        )
    if not usable_cases:
        return records
    comparators = sorted((o for o in outcomes if not o.injured), key=lambda o: o.athlete_id)
    for j, o in enumerate(comparators):
        case = usable_cases[j % len(usable_cases)]
        if case.injury_fraction_of_week is None:
            continue
        censored = _censor_week_at_fraction(
            o, case.injury_day, case.injury_fraction_of_week, anchor
        )
        if censored is None:
            continue
        at, series = censored
        point = weekly_block_ratio(series, cfg.window_config(), at, anchor)
        if point is None:
            continue
        records.append(
            ExposureRecord(
                o.athlete_id, at, point, False,
                Mitigation.PROPORTIONAL_CENSORING, at, o.data_end,
                note=f"censored at {case.injury_fraction_of_week:.4f} of the week "
                f"(case {case.athlete_id}); assumes equal daily activity",
            )
        )
    return records


def _censor_week_at_fraction(
    outcome: AthleteOutcome, case_week_day: date, fraction: float, anchor: Weekday
) -> tuple[date, WorkloadSeries] | None:
    """Truncate a comparator's series at the case's position in that week.

    The comparator keeps the same calendar week as the case and the same
    number of elapsed scheduled days within it.
    """
    week_start = case_week_day - timedelta(
        days=(case_week_day.weekday() - anchor.value) % 7
    )
    sched_days = outcome.schedule.training_days()
    if not sched_days:
        return None
    keep = round(fraction * len(sched_days))
    keep = min(max(keep, 1), len(sched_days))
    last_kept = week_start + timedelta(days=sched_days[keep - 1])
    if not outcome.realized.covers(last_kept):
        return None
    return last_kept, outcome.realized.through(last_kept)


def _planned_proxy(
    outcomes: list[AthleteOutcome], cfg: MethodConfig
) -> list[ExposureRecord]:
    records = []
    for o in outcomes:
        at = _exposure_date(o, cfg.week_anchor)
        if o.injured:
            # the planned schedule is intact through the injury week's end
            week_start = at - timedelta(days=(at.weekday() - cfg.week_anchor.value) % 7)
            at = week_start + timedelta(days=6)
            if not o.planned.covers(at):
                continue
        point = weekly_block_ratio(o.planned, cfg.window_config(), at, cfg.week_anchor)
        if point is None:
            continue
        records.append(
            ExposureRecord(
                o.athlete_id, at, point, o.injured,
                Mitigation.PLANNED_PROXY, at, o.planned.end,
            )
        )
    return records


def audit_no_post_event_data(records: list[ExposureRecord]) -> None:
    """Construction audit: no exposure may reach past its athlete's data end."""
    for r in records:
        if r.exposure_end > r.data_end:
            raise AssertionError(
                f"{r.athlete_id}: exposure window ends {r.exposure_end}, "
                f"after data end {r.data_end}"
            )


# -- matched designs ----------------------------------------------------------


@dataclass(frozen=True)
class MatchedPair:
    """Injured case and its control, both censored at the case's injury time.

    The stored control outcome is already truncated: it carries no data
    after the case's injury day.
    """

    case: AthleteOutcome
    control: AthleteOutcome
    case_ratio: RatioPoint | None
    control_ratio: RatioPoint | None


@dataclass(frozen=True)
class CaseControlResult:
    pairs: tuple[MatchedPair, ...]
    unmatched: tuple[str, ...]  # case athlete ids with no eligible control


def build_nested_case_control(
    outcomes: list[AthleteOutcome],
    cfg: MethodConfig | None = None,
    matcher=None,
) -> CaseControlResult:
    """Match each case to one eligible control censored at the injury time.

    Eligibility defaults to sharing the case's schedule and being uninjured;
    ties break on the lowest athlete id (controls may serve several cases).
    Both ratios are computed on series truncated at the case's injury day.
    """
    cfg = cfg or MethodConfig()
    matcher = matcher or (
        lambda case, candidate: not candidate.injured
        and candidate.schedule == case.schedule
    )
    cases = sorted(
        (o for o in outcomes if o.injured), key=lambda o: (o.injury_day, o.athlete_id)
    )
    pairs: list[MatchedPair] = []
    unmatched: list[str] = []
    for case in cases:
        eligible = sorted(
            (o for o in outcomes if o is not case and matcher(case, o)),
            key=lambda o: o.athlete_id,
        )
        eligible = [o for o in eligible if o.realized.covers(case.injury_day)]
        if not eligible:
            unmatched.append(case.athlete_id)
            continue
        control = eligible[0].censored_at(case.injury_day)
        window = cfg.window_config()
        case_ratio = weekly_block_ratio(
            case.realized, window, case.injury_day, cfg.week_anchor
        )
        control_ratio = weekly_block_ratio(
            control.realized, window, case.injury_day, cfg.week_anchor
        )
        pairs.append(MatchedPair(case, control, case_ratio, control_ratio))
    return CaseControlResult(tuple(pairs), tuple(unmatched))


@dataclass(frozen=True)
class CrossoverRecord:
    """An injured athlete's at-injury ratio vs earlier self-comparisons."""

    athlete: AthleteOutcome
    hazard_window_ratio: RatioPoint | None
    control_window_ratios: tuple[RatioPoint, ...]
    omitted_offsets: tuple[int, ...]  # offsets lacking history, flagged


def build_case_crossover(
    outcomes: list[AthleteOutcome],
    control_offsets: list[int],
    cfg: MethodConfig | None = None,
) -> list[CrossoverRecord]:
    """One record per injured athlete with the at-injury trailing-window
    ratio and the same ratio at earlier reference days.

    Offsets are in weeks before the injury; each must place the control's
    acute window entirely before the hazard window, so -1 is the nearest
    allowed. Offsets without enough history are omitted and flagged.
    """
    cfg = cfg or MethodConfig()
    for off in control_offsets:
        if off >= 0:
            raise ValueError("control offsets must be negative week counts")
    window = cfg.window_config()
    records = []
    for o in outcomes:
        if not o.injured:
            continue
        hazard = acratio_rolling(o.realized, window, o.injury_day)
        controls: list[RatioPoint] = []
        omitted: list[int] = []
        for off in sorted(control_offsets):
            ref = o.injury_day + timedelta(days=7 * off)
            point = (
                acratio_rolling(o.realized, window, ref)
                if o.realized.covers(ref)
                else None
            )
            if point is None:
                omitted.append(off)
            else:
                controls.append(point)
        records.append(CrossoverRecord(o, hazard, tuple(controls), tuple(omitted)))
    return records
