"""Natural-breaks tie grouping, Kendall tau-b, and cross-validated ranking.

Indicator values that are nearly equal make two fronts incomparable; the
Fisher-Jenks optimal partition of the sorted values into contiguous buckets
(bucket count chosen by an elbow rule on the goodness-of-variance fit) turns
them into tied ranks. Rankings are compared with tie-corrected Kendall tau-b.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np
from scipy import stats as sp_stats

from .features import EncodingConfig, encode, encode_front, fit_stats
from .pareto import INDICATOR_DIRECTIONS, indicator_value
from .ranksvm import TrainConfig, build_svm_dataset, train_linear_ranksvm, utility

GVF_SATURATION = 0.999
KNEE_DOMINANCE = 50.0


@dataclass(frozen=True)
class TiedRanking:
    """Items with integer ranks starting at 1; equal rank means tied."""

    items: tuple

    def __post_init__(self):
        items = tuple(self.items)
        ids = [i for i, _ in items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate item ids in ranking")
        ranks = sorted({r for _, r in items})
        if items and ranks != list(range(1, len(ranks) + 1)):
            raise ValueError(f"ranks must form a contiguous set starting at 1, got {ranks}")
        object.__setattr__(self, "items", items)

    def rank_of(self, item_id) -> int:
        for i, r in self.items:
            if i == item_id:
                return r
        raise KeyError(item_id)

    def ids(self) -> set:
        return {i for i, _ in self.items}


@dataclass(frozen=True)
class BreaksResult:
    k: int
    boundaries: tuple  # first value of each bucket after the first
    assignment: tuple  # bucket index per input position
    gvf: float
    cost: float  # total within-bucket sum of squared deviations


def _segment_costs(values: np.ndarray) -> np.ndarray:
    """cost[l, r] = within-SSE of values[l:r]; shared with the DP below."""
    n = len(values)
    cost = np.zeros((n + 1, n + 1))
    for l in range(n):
        for r in range(l + 1, n + 1):
            seg = values[l:r]
            cost[l, r] = float(np.sum((seg - seg.mean()) ** 2))
    return cost


def fisher_jenks(values, k: int) -> BreaksResult:
    """Optimal partition of sorted values into k contiguous buckets.

    Minimizes total within-bucket sum of squared deviations by dynamic
    programming; among equal-cost partitions the one with the earliest break
    positions wins.
    """
    vals = np.asarray(values, dtype=float)
    n = len(vals)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if np.any(np.diff(vals) < 0):
        raise ValueError("values must be sorted ascending")
    seg = _segment_costs(vals)
    # best[i] for the current bucket count: (cost, cut positions) over vals[:i]
    best: list = [None] * (n + 1)
    for i in range(1, n + 1):
        best[i] = (seg[0, i], ())
    for j in range(2, k + 1):
        nxt: list = [None] * (n + 1)
        for i in range(j, n + 1):
            choice = None
            for l in range(j - 1, i):
                cand = (best[l][0] + seg[l, i], best[l][1] + (l,))
                if choice is None or cand < choice:
                    choice = cand
            nxt[i] = choice
        best = nxt
    cost, cuts = best[n]
    assignment = np.zeros(n, dtype=int)
    for cut in cuts:
        assignment[cut:] += 1
    total = seg[0, n]
    gvf = 1.0 if total == 0.0 else 1.0 - cost / total
    return BreaksResult(
        k=k,
        boundaries=tuple(float(vals[c]) for c in cuts),
        assignment=tuple(int(b) for b in assignment),
        gvf=float(gvf),
        cost=float(cost),
    )


def gvf_curve(values, k_max: int) -> list[float]:
    return [fisher_jenks(values, k).gvf for k in range(1, k_max + 1)]


def select_k_elbow(values, k_max: int) -> int:
    """Bucket count at the knee of the gvf curve.

    The knee is the k with the largest drop in marginal gvf gain (the sign
    -adjusted discrete second difference). A knee only counts when its drop
    dominates every other drop; featureless curves (spread-out values, linear
    ramps, constants) fall back to the smallest k whose gvf saturates, so
    genuinely separated values end up in their own buckets.
    """
    vals = np.asarray(values, dtype=float)
    n = len(vals)
    if n < 1 or not 1 <= k_max <= n:
        raise ValueError(f"k_max must be in [1, {n}], got {k_max}")
    if n <= 2:
        return min(n, k_max)
    curve = gvf_curve(vals, k_max)
    drops = {k: 2.0 * curve[k - 1] - curve[k - 2] - curve[k] for k in range(2, k_max)}
    if len(drops) >= 2:
        best_k = min(drops, key=lambda k: (-drops[k], k))
        rest = max(d for k, d in drops.items() if k != best_k)
        if drops[best_k] > 1e-12 and drops[best_k] > KNEE_DOMINANCE * rest:
            return best_k
    for k in range(1, k_max + 1):
        if curve[k - 1] >= GVF_SATURATION:
            return k
    return k_max


def ranking_from_scores(ids, scores, direction: str) -> TiedRanking:
    """Rank items by score; exactly equal scores tie; best score gets rank 1."""
    scores = [float(s) for s in scores]
    distinct = sorted(set(scores), reverse=(direction == "maximize"))
    rank_of = {v: i + 1 for i, v in enumerate(distinct)}
    return TiedRanking(items=tuple((i, rank_of[s]) for i, s in zip(ids, scores)))


def ranking_from_values(values, direction: str) -> TiedRanking:
    """Jenks-tied ranking of raw indicator values (ids are list positions)."""
    values = [float(v) for v in values]
    if not values:
        raise ValueError("need at least one value to rank")
    sorted_vals = sorted(values)
    k = select_k_elbow(sorted_vals, k_max=len(sorted_vals))
    breaks = fisher_jenks(sorted_vals, k)
    buckets = [bisect_right(breaks.boundaries, v) for v in values]
    occupied = sorted(set(buckets))
    position = {b: i for i, b in enumerate(occupied)}
    n_occ = len(occupied)
    items = []
    for idx, b in enumerate(buckets):
        pos = position[b]
        rank = n_occ - pos if direction == "maximize" else pos + 1
        items.append((idx, rank))
    return TiedRanking(items=tuple(items))


def tied_ranking(fronts, kind: str, direction: str | None = None) -> TiedRanking:
    """Bucket-wise ranking of fronts by an indicator with Jenks tie groups.

    Item ids are the positions of the fronts in the input list.
    """
    fronts = list(fronts)
    if not fronts:
        raise ValueError("need at least one front to rank")
    if direction is None:
        direction = INDICATOR_DIRECTIONS[kind]
    return ranking_from_values([indicator_value(kind, f) for f in fronts], direction)


def kendall_tau_b(r1: TiedRanking, r2: TiedRanking) -> float:
    """Tie-corrected Kendall rank correlation in [-1, 1]; 0 when degenerate."""
    if r1.ids() != r2.ids():
        raise ValueError("rankings must cover the same item set")
    ids = sorted(r1.ids(), key=repr)
    x = [r1.rank_of(i) for i in ids]
    y = [r2.rank_of(i) for i in ids]
    if len(set(x)) <= 1 or len(set(y)) <= 1:
        return 0.0
    tau = sp_stats.kendalltau(x, y, variant="b").statistic
    return 0.0 if math.isnan(tau) else float(tau)


@dataclass(frozen=True)
class CvResult:
    indicator: str
    n_pairs: int
    tau_mean: float
    tau_std: float
    per_fold: tuple

    def to_json(self) -> dict:
        return {
            "indicator": self.indicator,
            "n_pairs": self.n_pairs,
            "tau_mean": self.tau_mean,
            "tau_std": self.tau_std,
            "per_fold": list(self.per_fold),
        }


def _fold_slices(n: int, n_folds: int = 5) -> list[range]:
    size = n // n_folds
    return [range(f * size, (f + 1) * size) for f in range(n_folds)]


def _within_fold_pairs(fold: range) -> list[tuple[int, int]]:
    return list(itertools.combinations(fold, 2))


def training_pairs_for_fold(
    fold_slices: list[range], test_fold: int, n_pairs: int, rng: np.random.Generator
) -> list[tuple[int, int]]:
    """Training pairs for one CV rotation, never touching the test fold.

    Complete within-fold pair sets are taken from the training folds in
    rotation order; a remainder smaller than one fold's worth is subsampled
    from the next fold, and anything beyond four folds' worth is drawn from
    cross-fold pairs among training fronts.
    """
    n_folds = len(fold_slices)
    train_order = [(test_fold + d) % n_folds for d in range(1, n_folds)]
    per_fold = len(_within_fold_pairs(fold_slices[0]))
    n_train = sum(len(fold_slices[f]) for f in train_order)
    max_pairs = n_train * (n_train - 1) // 2
    if not 1 <= n_pairs <= max_pairs:
        raise ValueError(f"n_pairs must be in [1, {max_pairs}], got {n_pairs}")
    pairs: list[tuple[int, int]] = []
    complete = min(n_pairs // per_fold, len(train_order))
    for f in train_order[:complete]:
        pairs.extend(_within_fold_pairs(fold_slices[f]))
    remainder = n_pairs - complete * per_fold
    if remainder > 0:
        if complete < len(train_order):
            pool = _within_fold_pairs(fold_slices[train_order[complete]])
        else:
            train_ids = [i for f in train_order for i in fold_slices[f]]
            pool = [
                (a, b)
                for a, b in itertools.combinations(sorted(train_ids), 2)
                if not any(a in fold_slices[f] and b in fold_slices[f] for f in train_order)
            ]
        idx = rng.choice(len(pool), size=remainder, replace=False)
        pairs.extend(pool[i] for i in sorted(idx))
    return pairs


def cross_validate_ranker(
    fronts,
    kind: str,
    n_pairs: int,
    cfg: TrainConfig = TrainConfig(),
    seed: int = 0,
    encoding: EncodingConfig = EncodingConfig(),
) -> CvResult:
    """5-fold CV of a preference model against the indicator's tied ranking.

    Per test fold: train a RankSVM on oracle-labeled training pairs drawn per
    `training_pairs_for_fold`, rank the held-out fronts by utility, and score
    tau-b against the Jenks-tied indicator ranking of that fold.
    """
    from .oracle import OracleConfig, label_pairs  # deferred: oracle uses this module

    fronts = list(fronts)
    n = len(fronts)
    if n < 10 or n % 5 != 0:
        raise ValueError(f"need a multiple of 5 fronts (>= 10), got {n}")
    folds = _fold_slices(n)
    matrices = [encode_front(f, encoding) for f in fronts]
    stats = fit_stats(matrices)
    feats = {i: encode(m, stats) for i, m in enumerate(matrices)}
    oracle_cfg = OracleConfig(kind=kind)
    taus = []
    for test_fold in range(len(folds)):
        rng = np.random.default_rng([seed, test_fold])
        pair_ids = training_pairs_for_fold(folds, test_fold, n_pairs, rng)
        prefs = label_pairs(pair_ids, fronts, oracle_cfg)
        examples = build_svm_dataset(prefs, feats)
        model = train_linear_ranksvm(examples, cfg, stats_ref=stats.digest())
        test_ids = list(folds[test_fold])
        scores = [utility(model, feats[i]) for i in test_ids]
        predicted = ranking_from_scores(test_ids, scores, direction="maximize")
        truth_local = tied_ranking([fronts[i] for i in test_ids], kind)
        truth = TiedRanking(items=tuple((test_ids[i], r) for i, r in truth_local.items))
        taus.append(kendall_tau_b(predicted, truth))
    return CvResult(
        indicator=kind,
        n_pairs=n_pairs,
        tau_mean=float(np.mean(taus)),
        tau_std=float(np.std(taus)),
        per_fold=tuple(taus),
    )
