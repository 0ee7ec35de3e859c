"""Zone classification, discretize-after-modeling helpers, sparse-data audit.

The IOC model names a sweet spot (0.8-1.3) and a danger zone (1.5 and up);
the stretch between them is labeled Moderate here as an artifact convention,
the source material never names it. Zone boundary semantics are
configurable because the published thresholds come without inclusivity.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .ratios import RatioPoint

UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class Zone:
    """Half-open-or-closed interval [lower, upper] with a label."""

    label: str
    lower: float
    upper: float  # math.inf for the top zone
    lower_inclusive: bool = True
    upper_inclusive: bool = False

    def contains(self, value: float) -> bool:
        above = value > self.lower or (self.lower_inclusive and value == self.lower)
        below = value < self.upper or (self.upper_inclusive and value == self.upper)
        return above and below


@dataclass(frozen=True)
class ZoneScheme:
    """Ordered zones partitioning [0, inf); Undefined maps to Unclassified."""

    zones: tuple[Zone, ...]

    def __post_init__(self):
        if not self.zones:
            raise ValueError("a zone scheme needs at least one zone")
        if self.zones[0].lower != 0.0 or not self.zones[0].lower_inclusive:
            raise ValueError("zones must start at 0 inclusive")
        if not math.isinf(self.zones[-1].upper):
            raise ValueError("zones must extend to infinity")
        for a, b in zip(self.zones, self.zones[1:]):
            if a.upper != b.lower:
                raise ValueError(f"gap between zones {a.label!r} and {b.label!r}")
            if a.upper_inclusive == b.lower_inclusive:
                raise ValueError(
                    f"boundary {a.upper} must belong to exactly one of "
                    f"{a.label!r}/{b.label!r}"
                )

    def labels(self) -> list[str]:
        return [z.label for z in self.zones]


def ioc_zones() -> ZoneScheme:
    """Low < 0.8, Sweet [0.8, 1.3], Moderate (1.3, 1.5), Danger [1.5, inf).

    Sweet keeps both endpoints so the published threshold values land in
    their named zones; elsewhere a boundary belongs to the higher zone.
    """
    return ZoneScheme(
        (
            Zone("Low", 0.0, 0.8, True, False),
            Zone("Sweet", 0.8, 1.3, True, True),
            Zone("Moderate", 1.3, 1.5, False, False),
            Zone("Danger", 1.5, math.inf, True, False),
        )
    )


def classify(ratio: RatioPoint | float | None, scheme: ZoneScheme | None = None) -> str:
    """Zone label for a ratio; Undefined ratios map to Unclassified."""
    scheme = scheme or ioc_zones()
    value = ratio.ratio if isinstance(ratio, RatioPoint) else ratio
    if value is None:
        return UNCLASSIFIED
    if value < 0:
        raise ValueError("ratios are nonnegative")
    for zone in scheme.zones:
        if zone.contains(value):
            return zone.label
    raise AssertionError(f"zone scheme failed to cover {value}")  # unreachable


@dataclass(frozen=True)
class LabeledPoint:
    point: RatioPoint
    label: str
    clamped_ratio: float | None


@dataclass(frozen=True)
class LabeledSeries:
    points: tuple[LabeledPoint, ...]
    clamped: bool
    clamp_bounds: tuple[float, float] | None


DEFAULT_CLAMP_BOUNDS = (0.5, 2.0)


def discretize_after(
    ratios: Sequence[RatioPoint],
    scheme: ZoneScheme | None = None,
    clamp: bool = False,
    clamp_bounds: tuple[float, float] = DEFAULT_CLAMP_BOUNDS,
) -> LabeledSeries:
    """Label a ratio series, optionally clamping end-point ratios first.

    Clamping maps ratios below the lower bound to it and above the upper
    bound to it before labeling (the treatment the consensus model applied
    to its end-point bins); whether clamping ran is recorded alongside.
    """
    scheme = scheme or ioc_zones()
    lo, hi = clamp_bounds
    if clamp and lo >= hi:
        raise ValueError("clamp bounds must be increasing")
    labeled = []
    for p in ratios:
        value = p.ratio
        if clamp and value is not None:
            value = min(max(value, lo), hi)
        labeled.append(LabeledPoint(p, classify(value, scheme), value))
    return LabeledSeries(tuple(labeled), clamp, clamp_bounds if clamp else None)


# -- sparse-data adequacy -----------------------------------------------------


@dataclass(frozen=True)
class SparseEvent:
    """One observed participant-period: covariates, exposure level, outcome."""

    covariates: tuple[Hashable, ...]
    exposure_level: str
    injured: bool


@dataclass(frozen=True)
class CellVerdict:
    covariates: tuple[Hashable, ...]
    exposure_level: str
    events: int
    ok: bool


@dataclass(frozen=True)
class SparseAudit:
    """Event counts per covariate-combination x exposure-level cell."""

    cells: tuple[CellVerdict, ...]
    required_per_cell: int

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def total_events(self) -> int:
        return sum(c.events for c in self.cells)

    def failing_cells(self) -> list[CellVerdict]:
        return [c for c in self.cells if not c.ok]


def sparse_audit(
    events: Iterable[SparseEvent],
    levels: Sequence[str],
    required: int = 5,
) -> SparseAudit:
    """Count injuries per cell and check each reaches the required minimum.

    Only events (injuries) count - adding uninjured participants never
    changes the verdict. Every exposure level must clear the bar within
    every covariate combination observed in the data; an exposure level
    absent from `levels` is rejected outright.
    """
    if required < 1:
        raise ValueError("required event count must be positive")
    if not levels:
        raise ValueError("no exposure levels given")
    known = set(levels)
    counts: Counter[tuple[tuple[Hashable, ...], str]] = Counter()
    combos: set[tuple[Hashable, ...]] = set()
    for ev in events:
        if ev.exposure_level not in known:
            raise ValueError(
                f"exposure level {ev.exposure_level!r} not among declared levels {sorted(known)}"
            )
        combos.add(ev.covariates)
        if ev.injured:
            counts[(ev.covariates, ev.exposure_level)] += 1
    if not combos:
        combos = {()}

    cells = tuple(
        CellVerdict(combo, level, counts[(combo, level)], counts[(combo, level)] >= required)
        for combo in sorted(combos, key=repr)
        for level in levels
    )
    return SparseAudit(cells, required)
