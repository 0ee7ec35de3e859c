#!/usr/bin/env python3
"""Three very different training months, one identical rolling ratio.

Rolling weekly averages see only block totals: any 4-week profile with the
same weekly sums produces the same acute load, chronic load, and ratio.
EWMA weighting separates the three profiles again. Writes a PNG alongside
the printed comparison.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from acwr import WindowConfig, acratio_ewma_coupled, acratio_rolling, to_weekly_blocks
from acwr.figures import same_ratio_series

series = same_ratio_series()

print(f"{'profile':>8} {'weekly totals':>22} {'acute':>6} {'chronic':>8} {'rolling':>8} {'ewma':>7}")
for name, s in series.items():
    weekly = to_weekly_blocks(s).totals()
    rolling = acratio_rolling(s, WindowConfig(), s.end)
    ewma_point = acratio_ewma_coupled(s)
    print(
        f"{name:>8} {str([int(w) for w in weekly]):>22} "
        f"{rolling.acute:6.0f} {rolling.chronic:8.0f} "
        f"{rolling.ratio:8.4f} {ewma_point.ratio:7.4f}"
    )

print()
print("The rolling columns are identical by construction; the EWMA column")
print("reflects how each profile actually distributed its load.")

fig, axes = plt.subplots(3, 1, figsize=(8, 7), sharex=True, sharey=True)
for ax, (name, s) in zip(axes, series.items()):
    ax.bar(range(1, 29), s.loads, color="steelblue")
    ax.set_ylabel(name)
axes[-1].set_xlabel("day")
fig.suptitle("Same rolling ratio (1.43), different training")
fig.tight_layout()
fig.savefig("same_ratio_profiles.png", dpi=120)
print("\nwrote same_ratio_profiles.png")
