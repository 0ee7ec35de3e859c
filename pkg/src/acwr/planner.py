"""Plan next week's load against a ratio cap, and project candidate plans.

Solving ratio = cap for the upcoming acute load is trivial uncoupled
(acute = cap * chronic) but needs algebra coupled, because the planned week
feeds back into its own chronic denominator. With a W-week chronic window
holding the W-1 prior weekly totals at average `avg`:

    acute = cap * (W - 1) * avg / (W - cap)

which for the conventional W = 4 is the familiar 3-weeks-average formula.
A coupled cap of W or more is unattainable by any finite load, reported as
Unbounded rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from enum import Enum

from .ratios import MethodConfig, RatioSeries, acratio_rolling, ratio_series
from .timeseries import Coupling, WindowConfig, WorkloadSeries


@dataclass(frozen=True)
class PlanRequest:
    """Prior weekly totals (most recent last) and the ratio cap to respect."""

    prior_weekly_totals: list[float]
    max_acceptable_ratio: float
    coupling: Coupling = Coupling.COUPLED
    chronic_weeks: int = 4

    def __post_init__(self):
        if self.max_acceptable_ratio <= 0:
            raise ValueError("ratio cap must be positive")
        if self.chronic_weeks < 1:
            raise ValueError("chronic_weeks must be positive")
        if self.coupling is Coupling.COUPLED and self.chronic_weeks < 2:
            raise ValueError(
                "a coupled chronic window needs at least 2 weeks (the planned "
                "week plus history)"
            )
        if any(t < 0 for t in self.prior_weekly_totals):
            raise ValueError("weekly totals must be nonnegative")
        need = self.priors_needed
        if len(self.prior_weekly_totals) < need:
            raise ValueError(
                f"need {need} prior weekly totals for a {self.chronic_weeks}-week "
                f"{self.coupling.value} window, got {len(self.prior_weekly_totals)}"
            )

    @property
    def priors_needed(self) -> int:
        if self.coupling is Coupling.COUPLED:
            return self.chronic_weeks - 1
        return self.chronic_weeks

    def chronic_window_totals(self) -> list[float]:
        return self.prior_weekly_totals[-self.priors_needed :]


class PlanStatus(Enum):
    OK = "ok"
    UNBOUNDED = "unbounded"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class PlanResult:
    """Maximum safe acute load, or why there is none."""

    status: PlanStatus
    max_acute_load: float | None
    achieved_ratio_check: float | None
    note: str = ""


def max_safe_acute(req: PlanRequest) -> PlanResult:
    """Largest upcoming acute load whose ratio stays at the cap.

    The achieved_ratio_check field re-derives the ratio at the returned load
    through the rolling engine, so the algebra is verified on every call.
    """
    r = req.max_acceptable_ratio
    window = req.chronic_window_totals()

    if req.coupling is Coupling.COUPLED:
        w = req.chronic_weeks
        if r >= w:
            return PlanResult(
                PlanStatus.UNBOUNDED,
                None,
                None,
                note=f"coupled ratio can never reach {w}; any load keeps it below the cap",
            )
        avg = sum(window) / len(window)
        load = r * (w - 1) * avg / (w - r)
    else:
        chronic = sum(window) / len(window)
        if chronic == 0.0:
            return PlanResult(
                PlanStatus.UNDEFINED,
                None,
                None,
                note="uncoupled chronic load is zero; the ratio is undefined at any load",
            )
        load = r * chronic

    achieved = _rolling_ratio_at_load(req, load)
    return PlanResult(PlanStatus.OK, load, achieved)


def _rolling_ratio_at_load(req: PlanRequest, acute_load: float) -> float | None:
    """Round-trip: build the weekly series and recompute the ratio."""
    weeks = req.chronic_window_totals() + [acute_load]
    loads: list[float] = []
    for total in weeks:
        loads.extend([0.0] * 6 + [float(total)])  # one session per week keeps sums exact
    series = WorkloadSeries("plan", date(2024, 1, 1), tuple(loads))
    cfg = WindowConfig(1, req.chronic_weeks, req.coupling)
    point = acratio_rolling(series, cfg, series.end)
    return None if point is None else point.ratio


def project_schedule(
    history: WorkloadSeries,
    planned: WorkloadSeries,
    cfg: MethodConfig,
) -> RatioSeries:
    """Ratio trajectory over the planned horizon, as if the plan were executed.

    The plan must start the day after the history ends; gaps or overlaps are
    rejected. Undefined points (zero chronic) are preserved in the output.
    """
    if not planned.loads:
        return []
    expected = history.end + timedelta(days=1)
    if planned.start != expected:
        raise ValueError(
            f"plan must start {expected} (day after history ends), got {planned.start}"
        )
    combined = WorkloadSeries(
        history.athlete_id,
        history.start,
        history.loads + planned.loads,
        history.imputed + planned.imputed,
    )
    return ratio_series(combined, cfg, start=planned.start, end=planned.end)
