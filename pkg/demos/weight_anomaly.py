#!/usr/bin/env python3
"""Walk through the EWMA weight algebra and the initial-value anomaly.

Prints the expanded weight table over the standard lambda grid for 28 days
of activity, then shows why the chronic decay constant gives the oldest
value almost twice the weight of the newest day.
"""

from acwr import (
    chronic_ratio_contribution,
    initial_weight_dominates,
    lambda_from_n,
    weight_table,
)

print("Expanded EWMA weights for 28 days of activity")
print(f"{'lambda':>8} {'w0':>13} {'w1':>13} {'w1-w0':>14}  initial dominates?")
for i in range(20, 0, -1):
    lam = i * 0.025
    t = weight_table(lam, 28)
    print(
        f"{lam:8.3f} {t.w0:13.9f} {t.w1:13.9f} {t.difference:14.9f}  "
        f"{'yes' if initial_weight_dominates(lam) else 'no'}"
    )

print()
lam_acute = lambda_from_n(7)
lam_chronic = lambda_from_n(28)
print(f"acute constant   lambda(7)  = {lam_acute}")
print(f"chronic constant lambda(28) = {lam_chronic:.7f}")
print()
print("Weight of the initial value relative to the newest day, w0/w_t:")
print(f"  acute   (lambda=0.25,  t=28): {chronic_ratio_contribution(lam_acute, 28):.6f}")
print(f"  chronic (lambda=2/29,  t=28): {chronic_ratio_contribution(lam_chronic, 28):.6f}")
print()
print("With the chronic constant, the value furthest in the past carries")
print("~1.96x the weight of the most recent day - the opposite of the")
print("recency weighting the average is meant to provide. Any decay")
print("constant below 0.5 has this property; it only fades with enough")
print("days of history (see convergence.py).")
