#!/usr/bin/env python3
"""Zone classification, end-point clamping, and the 5-events-per-cell rule.

Shows the discretize-after-modeling workflow: keep ratios continuous for
analysis, label them afterwards, and check whether a dataset even has
enough injuries per stratum to support a categorical model.
"""

from datetime import date

from acwr import (
    RatioMethod,
    RatioPoint,
    SparseEvent,
    classify,
    discretize_after,
    sparse_audit,
)


def point(ratio):
    return RatioPoint(date(2024, 3, 4), ratio, 1.0, ratio, RatioMethod.ROLLING_COUPLED)


print("zone labels on the published thresholds:")
for value in (0.5, 0.79, 0.8, 1.0, 1.3, 1.4, 1.5, 2.0, 2.7):
    print(f"  ratio {value:4.2f} -> {classify(value)}")

print("\nend-point clamping (the consensus model's 0.5 / 2.0 treatment):")
ratios = [point(v) for v in (0.2, 0.9, 2.7)]
labeled = discretize_after(ratios, clamp=True)
for lp in labeled.points:
    print(f"  ratio {lp.point.ratio:4.2f} -> clamped {lp.clamped_ratio:4.2f} -> {lp.label}")

print("\nsparse-data audit: 3 exposure levels, univariate")
for counts in ({"low": 5, "medium": 5, "high": 5}, {"low": 4, "medium": 6, "high": 5}):
    events = [
        SparseEvent((), level, True)
        for level, n in counts.items()
        for _ in range(n)
    ]
    result = sparse_audit(events, ["low", "medium", "high"])
    verdict = "PASS" if result.passed else "FAIL"
    print(f"  injury counts {list(counts.values())} -> {verdict}")
    for cell in result.failing_cells():
        print(f"    short cell: {cell.exposure_level} has {cell.events} < {result.required_per_cell}")

print("\nAdding uninjured participants never changes a verdict - only events count.")
print("With sex as a covariate the rule needs 5 events in all 6 cells:")
events = [
    SparseEvent((sex,), level, True)
    for sex in ("f", "m")
    for level in ("low", "medium", "high")
    for _ in range(5)
]
result = sparse_audit(events, ["low", "medium", "high"])
print(f"  6 cells x 5 events -> {'PASS' if result.passed else 'FAIL'} "
      f"({result.total_events} events total)")
