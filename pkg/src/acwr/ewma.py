"""Exponentially weighted moving averages and their weight algebra.

The recursion is E_t = lam * L_t + (1 - lam) * E_{t-1}. Expanding it over t
days gives weight (1-lam)^t to the initial value E_0 and lam*(1-lam)^(t-i)
to the load on day i. For lam < 1/2 the initial value outweighs the first
load, which is why long chronic windows need a burn-in before the output is
trustworthy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date

from .timeseries import WorkloadSeries


# -- initial-value policies -------------------------------------------------


@dataclass(frozen=True)
class FirstLoad:
    """Use the first recorded load as E_0 (the first output equals it)."""


@dataclass(frozen=True)
class Zero:
    """Start from E_0 = 0; the first record is treated as the first update."""


@dataclass(frozen=True)
class Fixed:
    """Start from an explicit E_0 >= 0."""

    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("fixed initial value must be nonnegative")


@dataclass(frozen=True)
class BurnIn:
    """Like `base`, but the first `days` outputs are flagged unconverged.

    Computation is never suppressed; the flag just marks output that is still
    dominated by the initial value.
    """

    days: int = 50
    base: FirstLoad | Zero | Fixed = FirstLoad()

    def __post_init__(self):
        if self.days < 1:
            raise ValueError("burn-in length must be positive")


InitialPolicy = FirstLoad | Zero | Fixed | BurnIn


def lambda_from_n(n: int) -> float:
    """Decay constant for an n-day window: 2 / (n + 1)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return 2.0 / (n + 1)


@dataclass(frozen=True)
class EwmaParams:
    """Decay constant, the window N it came from (if any), and E_0 policy."""

    lam: float
    n_source: int | None = None
    initial_policy: InitialPolicy = FirstLoad()

    def __post_init__(self):
        if not (0.0 < self.lam <= 1.0):
            raise ValueError("lambda must lie in (0, 1]")
        if self.n_source is not None and self.lam != lambda_from_n(self.n_source):
            raise ValueError(
                f"lambda {self.lam!r} is not 2/(n+1) for n={self.n_source}"
            )

    @classmethod
    def from_n(cls, n: int, initial_policy: InitialPolicy = FirstLoad()) -> "EwmaParams":
        return cls(lambda_from_n(n), n_source=n, initial_policy=initial_policy)


ACUTE_N = 7
CHRONIC_N = 28
DEFAULT_BURN_IN_DAYS = 50


def default_acute_params(policy: InitialPolicy | None = None) -> EwmaParams:
    """lambda(7) = 0.25 with a 50-day burn-in flag."""
    return EwmaParams.from_n(ACUTE_N, policy or BurnIn(DEFAULT_BURN_IN_DAYS))


def default_chronic_params(policy: InitialPolicy | None = None) -> EwmaParams:
    """lambda(28) = 2/29 with a 50-day burn-in flag."""
    return EwmaParams.from_n(CHRONIC_N, policy or BurnIn(DEFAULT_BURN_IN_DAYS))


# -- the average itself -----------------------------------------------------


@dataclass(frozen=True)
class EwmaPoint:
    at: date
    value: float
    converged: bool = True


def _resolve_e0(policy: InitialPolicy, first_load: float) -> tuple[float, int]:
    """E_0 and the number of leading outputs to flag unconverged."""
    if isinstance(policy, BurnIn):
        e0, _ = _resolve_e0(policy.base, first_load)
        return e0, policy.days
    if isinstance(policy, FirstLoad):
        return first_load, 0
    if isinstance(policy, Zero):
        return 0.0, 0
    if isinstance(policy, Fixed):
        return policy.value, 0
    raise TypeError(f"unknown initial policy {policy!r}")


def ewma(series: WorkloadSeries, p: EwmaParams) -> list[EwmaPoint]:
    """Day-by-day EWMA over a series, one output per day.

    Under FirstLoad the first output equals the first load (the record is
    consumed as E_0); under Zero/Fixed every record is an update. A BurnIn
    policy additionally marks the first `days` outputs unconverged.
    """
    e0, burn_days = _resolve_e0(p.initial_policy, series.loads[0])
    out: list[EwmaPoint] = []
    value = e0
    for i, (d, load) in enumerate(series.entries()):
        value = p.lam * load + (1.0 - p.lam) * value
        out.append(EwmaPoint(d, value, converged=i >= burn_days))
    return out


def ewma_value_at(series: WorkloadSeries, p: EwmaParams, at: date) -> EwmaPoint:
    """EWMA at one date, running the recursion over the full history."""
    points = ewma(series.through(at), p)
    return points[-1]


def windowed_ewma(loads: list[float], lam: float) -> float:
    """EWMA over a fixed window with weights renormalized to sum to 1.

    The window has no initial value: the weight lam*(1-lam)^(n-i) of each day
    is divided by the window's total weight. As lam -> 0 this reduces to the
    plain mean, which an unnormalized truncation would not.
    """
    if not loads:
        raise ValueError("empty window")
    if not (0.0 < lam <= 1.0):
        raise ValueError("lambda must lie in (0, 1]")
    n = len(loads)
    weights = [lam * (1.0 - lam) ** (n - i) for i in range(1, n + 1)]
    total = sum(weights)
    return sum(w * l for w, l in zip(weights, loads)) / total


# -- expanded weights -------------------------------------------------------


@dataclass(frozen=True)
class WeightTable:
    """Expanded EWMA weights for t days: w0 for E_0, w[i-1] for day i."""

    lam: float
    t: int
    w0: float
    w: tuple[float, ...]

    @property
    def w1(self) -> float:
        return self.w[0]

    @property
    def difference(self) -> float:
        """w1 - w0: negative whenever the initial value dominates."""
        return self.w[0] - self.w0

    def total(self) -> float:
        return self.w0 + sum(self.w)


def weight_table(lam: float, t: int) -> WeightTable:
    """Exact expanded weights w0 = (1-lam)^t, w_i = lam*(1-lam)^(t-i)."""
    if not (0.0 < lam < 1.0):
        raise ValueError("weight table requires 0 < lambda < 1")
    if t < 1:
        raise ValueError("t must be a positive integer")
    w0 = (1.0 - lam) ** t
    w = tuple(lam * (1.0 - lam) ** (t - i) for i in range(1, t + 1))
    return WeightTable(lam, t, w0, w)


def initial_weight_dominates(lam: float) -> bool:
    """True iff w0 > w1, i.e. the initial value outweighs the first load.

    Holds exactly when lam < 1/2, independent of t; at lam = 1/2 the two
    weights are equal, which is not strict dominance.
    """
    if not (0.0 < lam < 1.0):
        raise ValueError("requires 0 < lambda < 1")
    return lam < 0.5


def chronic_ratio_contribution(lam: float, t: int) -> float:
    """Weight of the initial value relative to the most recent day: w0 / w_t.

    Equals (1-lam)^t / lam; about 1.96 for the default chronic constant
    lambda(28) = 2/29 at t = 28, the anomaly the burn-in guards against.
    """
    table = weight_table(lam, t)
    return table.w0 / table.w[-1]


# -- initial-value convergence ----------------------------------------------


@dataclass(frozen=True)
class ConvergenceResult:
    """First day two initial values agree within epsilon, plus the trace.

    `trace[t]` is the signed difference after t updates; trace[0] = e0_a -
    e0_b. The difference obeys the closed form (1-lam)^t * (e0_a - e0_b)
    regardless of the loads, so `day` is computed analytically and verified
    against the recursive trace.
    """

    day: int
    epsilon: float
    trace: tuple[float, ...]
    closed_form: tuple[float, ...]

    @property
    def max_trace_error(self) -> float:
        return max(abs(a - b) for a, b in zip(self.trace, self.closed_form))


def convergence_day(lam: float, delta0: float, epsilon: float) -> int:
    """Smallest t >= 0 with (1-lam)^t * |delta0| < epsilon."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not (0.0 < lam <= 1.0):
        raise ValueError("lambda must lie in (0, 1]")
    gap = abs(delta0)
    if gap < epsilon:
        return 0
    if lam == 1.0:
        return 1
    # analytic t = log(gap/eps) / -log(1-lam), nudged across float rounding
    est = math.log(gap / epsilon) / -math.log1p(-lam)
    t = max(0, int(est) - 2)
    while (1.0 - lam) ** t * gap >= epsilon:
        t += 1
    return t


def convergence_analysis(
    profile: WorkloadSeries,
    p: EwmaParams,
    e0_a: float,
    e0_b: float,
    epsilon: float,
) -> ConvergenceResult:
    """Run the EWMA twice with different initial values and track the gap.

    The recursive trace is checked against the closed form on every call;
    disagreement beyond float noise means the recursion is broken.
    """
    a = ewma(profile, EwmaParams(p.lam, p.n_source, Fixed(e0_a)))
    b = ewma(profile, EwmaParams(p.lam, p.n_source, Fixed(e0_b)))
    delta0 = e0_a - e0_b
    trace = (delta0,) + tuple(x.value - y.value for x, y in zip(a, b))
    closed = tuple(delta0 * (1.0 - p.lam) ** t for t in range(len(trace)))
    tolerance = 1e-9 * max(1.0, abs(delta0))
    for t, (got, want) in enumerate(zip(trace, closed)):
        if abs(got - want) > tolerance:
            raise AssertionError(
                f"decay identity violated at t={t}: trace {got!r} vs closed form {want!r}"
            )
    return ConvergenceResult(
        day=convergence_day(p.lam, delta0, epsilon),
        epsilon=epsilon,
        trace=trace,
        closed_form=closed,
    )
