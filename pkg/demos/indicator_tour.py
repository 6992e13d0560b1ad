"""Tour of the Pareto-front machinery: dominance, the four quality
indicators, and tie-aware ranking.

Run:  python3 demos/indicator_tour.py
"""

import numpy as np

from prefpareto import (
    ModelPoint,
    dominates,
    hypervolume,
    indicator_value,
    max_spread,
    pareto_filter,
    r2_indicator,
    spacing,
    tied_ranking,
)

# Losses are (accuracy loss, normalized energy), both minimized on [0, 1].
raw = [(0.20, 0.50), (0.50, 0.20), (0.60, 0.60), (0.35, 0.35), (0.90, 0.05)]
points = [ModelPoint(id=f"m{i}", losses=np.array(p)) for i, p in enumerate(raw)]

print("dominance: (0.2, 0.5) vs (0.6, 0.6) ->", dominates((0.2, 0.5), (0.6, 0.6)))
print("dominance: (0.2, 0.5) vs (0.5, 0.2) ->", dominates((0.2, 0.5), (0.5, 0.2)))

front = pareto_filter(points)
print("\nnon-dominated subset, sorted by energy:")
for p in front.points:
    print(f"  {p.id}: {p.losses.tolist()}")

print("\nquality indicators (nadir (1,1), ideal (0,0)):")
print(f"  hypervolume  {hypervolume(front):.4f}   (bigger is better)")
print(f"  spacing      {spacing(front):.4f}   (smaller is better)")
print(f"  max spread   {max_spread(front):.4f}   (bigger is better)")
print(f"  r2           {r2_indicator(front):.4f}   (smaller is better)")

# Near-equal indicator values should count as ties: natural-breaks grouping
# turns eight fronts (two tight quality clusters) into two rank groups.
depths = [0.10, 0.101, 0.102, 0.103, 0.60, 0.601, 0.602, 0.603]
fronts = [
    pareto_filter([ModelPoint(id="only", losses=np.array([d, d]))]) for d in depths
]
ranking = tied_ranking(fronts, "HV")
print("\nhypervolume tie-ranking of two quality clusters:")
print("  values :", [round(indicator_value("HV", f), 3) for f in fronts])
print("  ranks  :", [rank for _, rank in ranking.items])
