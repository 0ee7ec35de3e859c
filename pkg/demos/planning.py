#!/usr/bin/env python3
"""Plan next week's maximum load under a ratio cap, both coupling modes.

The coupled calculation must account for the planned week feeding back into
its own chronic denominator; the uncoupled one is a plain multiple of the
prior average. Also projects a candidate plan day by day.
"""

from datetime import timedelta

from acwr import (
    Coupling,
    MethodConfig,
    PlanRequest,
    WorkloadSeries,
    classify,
    max_safe_acute,
    project_schedule,
)
from acwr.figures import PROFILE_START

priors = [10.0, 10.0, 10.0]
cap = 1.3

coupled = max_safe_acute(PlanRequest(priors, cap))
print(f"prior weekly totals: {priors}, ratio cap {cap}")
print(f"coupled   max acute load: {coupled.max_acute_load:.4f} "
      f"(check: ratio at that load = {coupled.achieved_ratio_check:.6f})")

uncoupled = max_safe_acute(
    PlanRequest(priors + [10.0], cap, coupling=Coupling.UNCOUPLED)
)
print(f"uncoupled max acute load: {uncoupled.max_acute_load:.4f} "
      f"(check: {uncoupled.achieved_ratio_check:.6f})")

print()
unbounded = max_safe_acute(PlanRequest(priors, 4.0))
print(f"coupled cap of 4 -> {unbounded.status.value}: {unbounded.note}")

# project a concrete plan: history of 10/week, next week at the coupled max
history_loads = []
for _ in range(4):
    history_loads.extend([0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 0.0])
history = WorkloadSeries("demo", PROFILE_START, tuple(history_loads))
per_day = coupled.max_acute_load / 5
plan = WorkloadSeries(
    "demo", history.end + timedelta(days=1),
    (0.0, per_day, per_day, per_day, per_day, per_day, 0.0),
)
print("\nprojected daily ratio over the planned week (coupled rolling):")
for point in project_schedule(history, plan, MethodConfig()):
    print(f"  {point.at}  ratio {point.ratio:6.4f}  zone {classify(point)}")
