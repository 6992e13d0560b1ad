"""Batch experiment protocols: tau curves, the PB/IB matrix, ranker tuning.

Every run is keyed by (profile id, seed); all randomness is derived from
those, so reruns produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .benchmark import DatasetProfile, default_space, run_moml, sample_config
from .features import encode_front, fit_stats, front_features
from .hpo import CostSpec, OptimizerConfig, cost, optimize
from .oracle import OracleConfig, build_pairs, label_pairs
from .pareto import INDICATOR_DIRECTIONS, INDICATOR_KINDS, indicator_value, pareto_filter
from .ranking import cross_validate_ranker
from .ranksvm import TrainConfig, build_svm_dataset, train_linear_ranksvm

#: Tuned regularization per indicator (argmax mean CV tau on the held-out
#: tuning profiles over the grid {0.01, 0.1, 1, 10}; smallest reg on ties).
TUNED_REG = {"HV": 0.01, "SP": 0.01, "MS": 0.01, "R2": 0.01}

PAIR_REGIMES = (28, 56, 84, 112, 140)
TUNING_PROFILES = (1000, 1001, 1002)
EVALUATION_PROFILES = tuple(range(10))


def _seed_int(*parts) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def sample_experiment_fronts(profile_id: int, n_fronts: int, seed: int) -> list:
    """Preliminary sampling: one Pareto front per random configuration."""
    space = default_space()
    profile = DatasetProfile(profile_id)
    rng = np.random.default_rng([profile_id, seed])
    return [pareto_filter(run_moml(sample_config(space, rng), profile)) for _ in range(n_fronts)]


def tau_curve(
    indicators=INDICATOR_KINDS,
    n_pairs_list=PAIR_REGIMES,
    profile_ids=TUNING_PROFILES,
    seeds=(0, 1, 2),
    n_fronts: int = 40,
    reg: float | None = None,
) -> dict:
    """Cross-validated tau of the preference model per comparison regime."""
    runs = []
    for kind in indicators:
        cfg = TrainConfig(reg=TUNED_REG[kind] if reg is None else reg)
        for n_pairs in n_pairs_list:
            for profile_id in profile_ids:
                for seed in seeds:
                    fronts = sample_experiment_fronts(profile_id, n_fronts, seed)
                    result = cross_validate_ranker(fronts, kind, n_pairs, cfg, seed=_seed_int(profile_id, seed))
                    runs.append(
                        {
                            "indicator": kind,
                            "n_pairs": n_pairs,
                            "profile_id": profile_id,
                            "seed": seed,
                            "tau_mean": result.tau_mean,
                            "tau_std": result.tau_std,
                            "per_fold": list(result.per_fold),
                        }
                    )
    aggregate = []
    for kind in indicators:
        for n_pairs in n_pairs_list:
            taus = [r["tau_mean"] for r in runs if r["indicator"] == kind and r["n_pairs"] == n_pairs]
            aggregate.append(
                {
                    "indicator": kind,
                    "n_pairs": n_pairs,
                    "tau_mean": float(np.mean(taus)),
                    "tau_std": float(np.std(taus)),
                }
            )
    return {"runs": runs, "aggregate": aggregate}


@dataclass(frozen=True)
class MatrixCell:
    pb_indicator: str
    ib_indicator: str
    pb_mean: float
    pb_std: float
    ib_mean: float
    ib_std: float

    def to_json(self) -> dict:
        return {
            "pb_indicator": self.pb_indicator,
            "ib_indicator": self.ib_indicator,
            "pb_mean": self.pb_mean,
            "pb_std": self.pb_std,
            "ib_mean": self.ib_mean,
            "ib_std": self.ib_std,
        }


def _pb_run(fronts, kind, n_pairs, budget, profile, reg, seed):
    """Phases 2-3 for one simulated user: label, train, optimize by utility."""
    stats = fit_stats([encode_front(f) for f in fronts])
    feats = {i: front_features(f, stats) for i, f in enumerate(fronts)}
    pairs = build_pairs(fronts, limit=n_pairs, seed=_seed_int(profile.profile_id, seed, 10))
    prefs = label_pairs(pairs, fronts, OracleConfig(kind=kind))
    model = train_linear_ranksvm(
        build_svm_dataset(prefs, feats), TrainConfig(reg=reg), stats_ref=stats.digest()
    )
    spec = CostSpec(mode="preference", model=model, stats=stats)
    return _optimize_run(spec, stats, profile, budget, _seed_int(profile.profile_id, seed, 11))


def _ib_run(kind, budget, profile, seed):
    spec = CostSpec(mode="indicator", kind=kind)
    return _optimize_run(spec, None, profile, budget, _seed_int(profile.profile_id, seed, 12))


def _optimize_run(spec, stats, profile, budget, seed):
    space = default_space()

    def objective(cfg):
        front = pareto_filter(run_moml(cfg, profile))
        return cost(spec, front, stats), front

    n_init = min(OptimizerConfig().n_init, max(1, budget - 1))
    trajectory = optimize(objective, space, OptimizerConfig(budget=budget, n_init=n_init, seed=seed))
    return trajectory.incumbent().front


def pb_ib_matrix(
    profile_ids=EVALUATION_PROFILES,
    seeds=(0, 1, 2),
    budget: int = 30,
    n_pairs: int = 28,
    n_fronts: int = 40,
    reg: float | None = None,
) -> dict:
    """The 4x4 comparison of preference-based vs indicator-based HPO.

    Rows are the indicator behind the simulated user, columns the indicator
    handed to the optimizer; every final front is scored by the row indicator.
    """
    pb_scores = {kind: [] for kind in INDICATOR_KINDS}
    ib_scores = {(r, c): [] for r in INDICATOR_KINDS for c in INDICATOR_KINDS}
    for profile_id in profile_ids:
        profile = DatasetProfile(profile_id)
        for seed in seeds:
            fronts = sample_experiment_fronts(profile_id, n_fronts, seed)
            ib_fronts = {c: _ib_run(c, budget, profile, seed) for c in INDICATOR_KINDS}
            for row in INDICATOR_KINDS:
                row_reg = TUNED_REG[row] if reg is None else reg
                pb_front = _pb_run(fronts, row, n_pairs, budget, profile, row_reg, seed)
                pb_scores[row].append(indicator_value(row, pb_front))
                for col in INDICATOR_KINDS:
                    ib_scores[(row, col)].append(indicator_value(row, ib_fronts[col]))
    cells = []
    for row in INDICATOR_KINDS:
        for col in INDICATOR_KINDS:
            cells.append(
                MatrixCell(
                    pb_indicator=row,
                    ib_indicator=col,
                    pb_mean=float(np.mean(pb_scores[row])),
                    pb_std=float(np.std(pb_scores[row])),
                    ib_mean=float(np.mean(ib_scores[(row, col)])),
                    ib_std=float(np.std(ib_scores[(row, col)])),
                )
            )
    return {"cells": [c.to_json() for c in cells], "summary": matrix_summary(cells)}


def pb_better_or_equal(cell: MatrixCell, rel_tol: float = 0.05) -> bool:
    """PB wins, or sits within rel_tol of IB, in the row indicator's direction."""
    slack = rel_tol * abs(cell.ib_mean)
    if INDICATOR_DIRECTIONS[cell.pb_indicator] == "maximize":
        return cell.pb_mean >= cell.ib_mean - slack
    return cell.pb_mean <= cell.ib_mean + slack


def matrix_summary(cells) -> dict:
    wins = sum(pb_better_or_equal(c) for c in cells)
    diagonal = {}
    for c in cells:
        if c.pb_indicator == c.ib_indicator:
            denom = abs(c.ib_mean)
            rel = abs(c.pb_mean - c.ib_mean) / denom if denom > 0 else 0.0
            diagonal[c.pb_indicator] = rel
    return {
        "pb_better_or_equal": int(wins),
        "cells_total": len(cells),
        "diagonal_relative_gap": diagonal,
    }


def tune_ranker(
    reg_grid=(0.01, 0.1, 1.0, 10.0),
    profile_ids=TUNING_PROFILES,
    seeds=(0, 1, 2),
    n_pairs: int = 112,
    n_fronts: int = 40,
) -> dict:
    """Grid search over the regularization strength, per indicator."""
    rows = []
    for kind in INDICATOR_KINDS:
        for reg in reg_grid:
            taus = []
            for profile_id in profile_ids:
                for seed in seeds:
                    fronts = sample_experiment_fronts(profile_id, n_fronts, seed)
                    result = cross_validate_ranker(
                        fronts, kind, n_pairs, TrainConfig(reg=reg), seed=_seed_int(profile_id, seed)
                    )
                    taus.append(result.tau_mean)
            rows.append({"indicator": kind, "reg": reg, "tau_mean": float(np.mean(taus))})
    best = {}
    for kind in INDICATOR_KINDS:
        candidates = [r for r in rows if r["indicator"] == kind]
        top = max(c["tau_mean"] for c in candidates)
        best[kind] = min(c["reg"] for c in candidates if c["tau_mean"] == top)
    return {"grid": rows, "best_reg": best, "n_pairs": n_pairs}
