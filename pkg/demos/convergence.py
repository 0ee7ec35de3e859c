#!/usr/bin/env python3
"""How long until two initial values stop mattering?

Runs the chronic EWMA twice over the same 84-day profile - once seeded with
the first recorded load (55), once with 0 - and tracks the gap. The gap
decays as (1-lambda)^t regardless of the loads, so the convergence day is
analytic; the trace verifies it.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from acwr import EwmaParams, convergence_analysis, convergence_day, lambda_from_n
from acwr.figures import convergence_profile, convergence_rows

profile = convergence_profile()
lam = lambda_from_n(28)

print(f"profile: {len(profile)} days, first load {profile.loads[0]:.0f}")
print(f"chronic decay constant lambda(28) = {lam:.7f}\n")

result = convergence_analysis(profile, EwmaParams(lam), e0_a=55.0, e0_b=0.0, epsilon=1.0)
print(f"first day with |gap| < 1.0: day {result.day}")
print(f"largest trace-vs-closed-form error: {result.max_trace_error:.2e}\n")

print("convergence day as a function of epsilon:")
for eps in (2.0, 1.5, 1.0, 0.75, 0.5):
    print(f"  epsilon {eps:4.2f} -> day {convergence_day(lam, 55.0, eps)}")
print()
print("The published ~50-55 day figures correspond to epsilon near 1; any")
print("strict threshold in the 0.5-2 range lands within a few weeks of it.")
print("Practical upshot: flag the first ~50 outputs as unconverged (the")
print("default burn-in) before trusting an EWMA ratio.")

header, rows = convergence_rows()
days = [r[0] for r in rows]
fig, axes = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
axes[0].plot(days, [r[5] for r in rows], label="E0 = 55")
axes[0].plot(days, [r[6] for r in rows], label="E0 = 0")
axes[0].set_ylabel("chronic EWMA")
axes[0].legend()
axes[1].plot(days, [r[9] for r in rows], color="firebrick")
axes[1].axvline(result.day, linestyle="--", color="gray")
axes[1].set_ylabel("|ratio gap|")
axes[1].set_xlabel("day")
fig.tight_layout()
fig.savefig("convergence.png", dpi=120)
print("\nwrote convergence.png")
