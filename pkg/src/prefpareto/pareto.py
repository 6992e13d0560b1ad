"""Pareto dominance, front extraction, and Pareto-front quality indicators.

All losses are minimized and normalized to [0, 1]. Throughout this package
M = 2: index 0 is accuracy loss (1 - accuracy), index 1 is normalized energy.
Fronts are kept sorted ascending by the energy loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

N_OBJECTIVES = 2

#: Default reference points on normalized losses: the worst corner for
#: hypervolume, the best corner for the R2 indicator.
NADIR = (1.0, 1.0)
IDEAL = (0.0, 0.0)

INDICATOR_KINDS = ("HV", "SP", "MS", "R2")

#: Optimization direction of each indicator (how "better" reads).
INDICATOR_DIRECTIONS = {"HV": "maximize", "SP": "minimize", "MS": "maximize", "R2": "minimize"}


def _as_losses(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"loss vector must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("loss vector contains non-finite entries")
    return arr


@dataclass(frozen=True)
class ModelPoint:
    """One trained model, identified by `id`, with its loss vector."""

    id: str
    losses: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        arr = _as_losses(self.losses)
        if arr.shape[0] != N_OBJECTIVES:
            raise ValueError(f"expected {N_OBJECTIVES} losses, got {arr.shape[0]}")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError(f"losses must lie in [0, 1], got {arr.tolist()}")
        object.__setattr__(self, "losses", arr)


def dominates(a, b) -> bool:
    """True iff loss vector `a` dominates `b` (<= everywhere, < somewhere)."""
    av, bv = _as_losses(a), _as_losses(b)
    if av.shape != bv.shape:
        raise ValueError(f"dimension mismatch: {av.shape} vs {bv.shape}")
    return bool(np.all(av <= bv) and np.any(av < bv))


def _sort_key(point: ModelPoint, order_key: int):
    other = 1 - order_key
    return (point.losses[order_key], point.losses[other], point.id)


@dataclass(frozen=True)
class ParetoFront:
    """Mutually non-dominated model points, sorted ascending by `order_key`."""

    points: tuple
    order_key: int = 1

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("a Pareto front cannot be empty")
        for i, p in enumerate(pts):
            for q in pts[i + 1 :]:
                if dominates(p.losses, q.losses) or dominates(q.losses, p.losses):
                    raise ValueError(f"points {p.id} and {q.id} are not mutually non-dominated")
        ordered = tuple(sorted(pts, key=lambda p: _sort_key(p, self.order_key)))
        object.__setattr__(self, "points", ordered)

    def __len__(self) -> int:
        return len(self.points)

    def losses_array(self) -> np.ndarray:
        """(n, 2) array of loss vectors in front order."""
        return np.array([p.losses for p in self.points], dtype=float)


def pareto_filter(points, order_key: int = 1) -> ParetoFront:
    """Extract the non-dominated subset of `points` as a sorted ParetoFront.

    Duplicate loss vectors collapse to the representative with the smallest id.
    """
    pts = list(points)
    if not pts:
        raise ValueError("cannot extract a Pareto front from an empty model set")
    by_losses: dict[tuple, ModelPoint] = {}
    for p in pts:
        key = tuple(p.losses.tolist())
        kept = by_losses.get(key)
        if kept is None or p.id < kept.id:
            by_losses[key] = p
    unique = list(by_losses.values())
    survivors = [
        p
        for p in unique
        if not any(dominates(q.losses, p.losses) for q in unique if q is not p)
    ]
    return ParetoFront(points=tuple(survivors), order_key=order_key)


def hypervolume(front: ParetoFront, ref=NADIR) -> float:
    """Area dominated by the front up to the reference point (2-D, exact).

    Computed as a sweep over points sorted by the first loss; the union of
    rectangles [x_i, r0] x [y_i, r1] telescopes because front points are
    mutually non-dominated.
    """
    ref = _as_losses(ref)
    losses = front.losses_array()
    if np.any(losses > ref + 1e-15):
        raise ValueError("front point exceeds the hypervolume reference point")
    order = np.lexsort((losses[:, 1], losses[:, 0]))
    xs, ys = losses[order, 0], losses[order, 1]
    area = 0.0
    prev_y = ref[1]
    for x, y in zip(xs, ys):
        area += (ref[0] - x) * (prev_y - y)
        prev_y = y
    return float(area)


def spacing(front: ParetoFront) -> float:
    """Standard deviation of nearest-neighbor L1 distances along the front.

    Zero for fronts with at most one point (a degenerate front is uniform).
    """
    losses = front.losses_array()
    n = losses.shape[0]
    if n <= 1:
        return 0.0
    l1 = np.abs(losses[:, None, :] - losses[None, :, :]).sum(axis=2)
    np.fill_diagonal(l1, np.inf)
    nearest = l1.min(axis=1)
    mean_d = nearest.mean()
    return float(math.sqrt(np.sum((mean_d - nearest) ** 2) / (n - 1)))


def max_spread(front: ParetoFront) -> float:
    """Euclidean norm of the per-objective extents of the front."""
    losses = front.losses_array()
    extents = losses.max(axis=0) - losses.min(axis=0)
    return float(math.sqrt(np.sum(extents**2)))


def r2_indicator(front: ParetoFront, ideal=IDEAL) -> float:
    """Minimum Chebyshev distance from the front to the ideal point."""
    ideal = _as_losses(ideal)
    losses = front.losses_array()
    return float(np.min(np.max(np.abs(losses - ideal), axis=1)))


def indicator_value(kind: str, front: ParetoFront, nadir=NADIR, ideal=IDEAL) -> float:
    """Dispatch to one of the four indicators by kind (HV, SP, MS, R2)."""
    if kind == "HV":
        return hypervolume(front, nadir)
    if kind == "SP":
        return spacing(front)
    if kind == "MS":
        return max_spread(front)
    if kind == "R2":
        return r2_indicator(front, ideal)
    raise ValueError(f"unknown indicator kind: {kind!r}")
