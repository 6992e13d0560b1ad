"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive: brute-force enumeration, dense-grid
integration, direct formula transcription. None of it shares code paths with
the implementations under test (the Fisher-Jenks oracle shares only the
per-segment SSE primitive so that exact cost comparison is well-defined).
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def brute_force_front(loss_rows):
    """Indices of non-dominated rows by pairwise comparison."""
    rows = [np.asarray(r, dtype=float) for r in loss_rows]
    keep = []
    for i, a in enumerate(rows):
        dominated = False
        for j, b in enumerate(rows):
            if i == j:
                continue
            if np.all(b <= a) and np.any(b < a):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


def grid_hypervolume(loss_rows, ref=(1.0, 1.0), resolution=2000):
    """Midpoint-grid integration of the dominated region."""
    pts = np.asarray(loss_rows, dtype=float)
    xs = (np.arange(resolution) + 0.5) * ref[0] / resolution
    ys = (np.arange(resolution) + 0.5) * ref[1] / resolution
    min_y = np.full(resolution, np.inf)
    for x0, y0 in pts:
        min_y = np.where(xs >= x0, np.minimum(min_y, y0), min_y)
    dominated = ys[None, :] >= min_y[:, None]
    cell = (ref[0] / resolution) * (ref[1] / resolution)
    return float(dominated.sum() * cell)


def naive_spacing(loss_rows):
    pts = [np.asarray(r, dtype=float) for r in loss_rows]
    n = len(pts)
    if n <= 1:
        return 0.0
    nearest = []
    for i in range(n):
        dists = [float(np.abs(pts[i] - pts[j]).sum()) for j in range(n) if j != i]
        nearest.append(min(dists))
    mean_d = sum(nearest) / n
    return math.sqrt(sum((mean_d - d) ** 2 for d in nearest) / (n - 1))


def naive_max_spread(loss_rows):
    pts = np.asarray(loss_rows, dtype=float)
    total = 0.0
    for j in range(pts.shape[1]):
        extent = max(abs(a - b) for a in pts[:, j] for b in pts[:, j])
        total += extent**2
    return math.sqrt(total)


def naive_r2(loss_rows, ideal=(0.0, 0.0)):
    best = math.inf
    for row in loss_rows:
        cheb = max(abs(v - r) for v, r in zip(row, ideal))
        best = min(best, cheb)
    return best


def segment_sse(values, l, r):
    seg = np.asarray(values, dtype=float)[l:r]
    return float(np.sum((seg - seg.mean()) ** 2))


def enumerate_jenks(values, k):
    """Exhaustive search over contiguous partitions; lex-earliest cuts win ties.

    Returns (cost, cuts) with cost accumulated left to right, matching the
    canonical accumulation order of the DP under test.
    """
    n = len(values)
    best = None
    for cuts in itertools.combinations(range(1, n), k - 1):
        edges = (0,) + cuts + (n,)
        total = 0.0
        for l, r in zip(edges, edges[1:]):
            total = total + segment_sse(values, l, r)
        cand = (total, cuts)
        if best is None or cand < best:
            best = cand
    return best


def naive_kendall_tau_b(x, y):
    """Tie-corrected tau from direct concordance counting."""
    n = len(x)
    concordant = discordant = ties_x = ties_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = x[i] - x[j], y[i] - y[j]
            if dx == 0 and dy == 0:
                ties_x += 1
                ties_y += 1
            elif dx == 0:
                ties_x += 1
            elif dy == 0:
                ties_y += 1
            elif dx * dy > 0:
                concordant += 1
            else:
                discordant += 1
    n0 = n * (n - 1) // 2
    denom = math.sqrt((n0 - ties_x) * (n0 - ties_y))
    if denom == 0:
        return 0.0
    return (concordant - discordant) / denom


def staircase_front(rng, size):
    """Random mutually non-dominated set: x strictly ascending, y strictly descending."""
    xs = np.sort(rng.uniform(0.001, 0.999, size=size)) + np.arange(size) * 1e-9
    ys = np.sort(rng.uniform(0.001, 0.999, size=size))[::-1] - np.arange(size) * 1e-9
    return np.column_stack([xs, ys])
