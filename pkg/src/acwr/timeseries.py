"""Daily workload histories and their weekly / rolling aggregations.

A workload series is one entry per calendar day over a contiguous span.
Days with no record are materialized as load 0 and flagged as imputed, so
audits can tell a rest day from a missing one. Loads are nonnegative reals
in whatever unit the sport uses (km, balls bowled, session-RPE, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from enum import Enum


class Weekday(Enum):
    """Week anchor: the weekday a training week starts on."""

    MONDAY = 0
    TUESDAY = 1
    WEDNESDAY = 2
    THURSDAY = 3
    FRIDAY = 4
    SATURDAY = 5
    SUNDAY = 6


@dataclass(frozen=True)
class WorkloadSeries:
    """Contiguous daily load history for one athlete.

    Stored as a start date plus one load per day; `imputed[i]` is True when
    day i had no source record and was filled with 0.
    """

    athlete_id: str
    start: date
    loads: tuple[float, ...]
    imputed: tuple[bool, ...] = ()

    def __post_init__(self):
        if not self.loads:
            raise ValueError("workload series must cover at least one day")
        if any(l < 0 for l in self.loads):
            raise ValueError("loads must be nonnegative")
        if self.imputed and len(self.imputed) != len(self.loads):
            raise ValueError("imputed flags must match the number of days")
        if not self.imputed:
            object.__setattr__(self, "imputed", (False,) * len(self.loads))

    @classmethod
    def from_entries(
        cls,
        athlete_id: str,
        entries: list[tuple[date, float]],
    ) -> "WorkloadSeries":
        """Build a series from dated records, imputing gaps as 0.

        Entries must have strictly increasing dates (at most one per day).
        """
        if not entries:
            raise ValueError("no entries")
        ordered = sorted(entries, key=lambda e: e[0])
        for (d1, _), (d2, _) in zip(ordered, ordered[1:]):
            if d1 == d2:
                raise ValueError(f"duplicate entry for {d1}")
        start = ordered[0][0]
        span = (ordered[-1][0] - start).days + 1
        loads = [0.0] * span
        imputed = [True] * span
        for d, load in ordered:
            i = (d - start).days
            loads[i] = float(load)
            imputed[i] = False
        return cls(athlete_id, start, tuple(loads), tuple(imputed))

    @property
    def end(self) -> date:
        return self.start + timedelta(days=len(self.loads) - 1)

    def __len__(self) -> int:
        return len(self.loads)

    def dates(self) -> list[date]:
        return [self.start + timedelta(days=i) for i in range(len(self.loads))]

    def entries(self) -> list[tuple[date, float]]:
        return list(zip(self.dates(), self.loads))

    def index_of(self, at: date) -> int:
        """Day index of `at` within the series; raises if outside the span."""
        i = (at - self.start).days
        if i < 0 or i >= len(self.loads):
            raise KeyError(f"{at} outside series span {self.start}..{self.end}")
        return i

    def covers(self, at: date) -> bool:
        return self.start <= at <= self.end

    def load_on(self, at: date) -> float:
        return self.loads[self.index_of(at)]

    def total(self) -> float:
        return float(sum(self.loads))

    def window_sum(self, last_day: date, days: int) -> float:
        """Sum of loads over the `days`-day window ending at `last_day`."""
        end_i = self.index_of(last_day)
        start_i = end_i - days + 1
        if start_i < 0:
            raise ValueError("window extends before the start of the series")
        return float(sum(self.loads[start_i : end_i + 1]))

    def through(self, last_day: date) -> "WorkloadSeries":
        """Truncated copy ending at `last_day` (inclusive)."""
        i = self.index_of(last_day)
        return WorkloadSeries(
            self.athlete_id, self.start, self.loads[: i + 1], self.imputed[: i + 1]
        )

    def scaled(self, c: float) -> "WorkloadSeries":
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return WorkloadSeries(
            self.athlete_id, self.start, tuple(l * c for l in self.loads), self.imputed
        )


@dataclass(frozen=True)
class WeekBlock:
    """One full training week: its start date and total load."""

    week_start: date
    total: float


@dataclass(frozen=True)
class PartialWeek:
    """Leading/trailing days that do not fill a whole week."""

    first_day: date
    days: int
    total: float


@dataclass(frozen=True)
class WeeklyBlocks:
    """Full-week totals plus the partial-week remainder that was excluded."""

    weeks: tuple[WeekBlock, ...]
    excluded: tuple[PartialWeek, ...] = ()
    diagnostics: tuple[str, ...] = ()

    def totals(self) -> list[float]:
        return [w.total for w in self.weeks]


def to_weekly_blocks(
    series: WorkloadSeries, week_anchor: Weekday = Weekday.MONDAY
) -> WeeklyBlocks:
    """Aggregate a daily series into full anchor-aligned weekly totals.

    Partial leading/trailing weeks are excluded from `weeks` and reported in
    `excluded`, so block totals plus excluded totals conserve the series sum.
    """
    first, last = series.start, series.end
    offset = (first.weekday() - week_anchor.value) % 7
    first_full_start = first + timedelta(days=(7 - offset) % 7)

    weeks: list[WeekBlock] = []
    excluded: list[PartialWeek] = []
    diagnostics: list[str] = []

    if first_full_start > first:
        lead_days = (first_full_start - first).days
        lead_days = min(lead_days, len(series))
        total = float(sum(series.loads[:lead_days]))
        excluded.append(PartialWeek(first, lead_days, total))

    cursor = first_full_start
    while cursor + timedelta(days=6) <= last:
        total = series.window_sum(cursor + timedelta(days=6), 7)
        weeks.append(WeekBlock(cursor, total))
        cursor = cursor + timedelta(days=7)

    if cursor <= last and cursor >= first:
        days = (last - cursor).days + 1
        total = float(sum(series.loads[series.index_of(cursor) :]))
        excluded.append(PartialWeek(cursor, days, total))

    if not weeks:
        diagnostics.append(
            f"series {first}..{last} holds no full {week_anchor.name.title()}-anchored week"
        )

    return WeeklyBlocks(tuple(weeks), tuple(excluded), tuple(diagnostics))


def rolling_daily_mean(
    series: WorkloadSeries, window_days: int, at: date
) -> float | None:
    """Mean daily load over the `window_days` window ending at `at`.

    Returns None ("not yet defined") when fewer than `window_days` days of
    history end at `at` - deliberately distinct from a mean of zero.
    """
    if window_days < 1:
        raise ValueError("window_days must be positive")
    if not series.covers(at):
        return None
    end_i = series.index_of(at)
    if end_i - window_days + 1 < 0:
        return None
    return series.window_sum(at, window_days) / window_days


class Coupling(Enum):
    """Whether the chronic window includes (coupled) or precedes (uncoupled)
    the acute window."""

    COUPLED = "coupled"
    UNCOUPLED = "uncoupled"


@dataclass(frozen=True)
class WindowConfig:
    """Acute/chronic window sizes in weeks, plus the coupling mode."""

    acute_weeks: int = 1
    chronic_weeks: int = 4
    coupling: Coupling = Coupling.COUPLED

    def __post_init__(self):
        if self.acute_weeks < 1 or self.chronic_weeks < 1:
            raise ValueError("window sizes must be positive")
        if self.coupling is Coupling.COUPLED and self.chronic_weeks <= self.acute_weeks:
            raise ValueError("coupled chronic window must be longer than the acute window")

    @property
    def history_weeks(self) -> int:
        """Full weeks of history needed for one ratio point."""
        if self.coupling is Coupling.COUPLED:
            return self.chronic_weeks
        return self.chronic_weeks + self.acute_weeks
