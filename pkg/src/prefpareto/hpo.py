"""Surrogate-based optimizer over the hyperparameter space.

A from-scratch sequential model-based loop: seeded random initialization,
then a random-forest surrogate whose per-tree spread feeds expected
improvement over a candidate pool of fresh random points and Gaussian
perturbations of the incumbent. Costs are minimized; a learned utility enters
negated, indicator costs are sign-adjusted per their direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm
from sklearn.ensemble import RandomForestRegressor

from .benchmark import ConfigSpace, Configuration, sample_config
from .features import FeatureStats, front_features
from .pareto import ParetoFront, hypervolume, max_spread, r2_indicator, spacing
from .ranksvm import UtilityModel, utility

LOCAL_SEARCH_SIGMA = 0.1


@dataclass(frozen=True)
class Trial:
    config: Configuration
    cost: float
    front: ParetoFront | None
    trial_index: int

    def to_json(self) -> dict:
        points = None
        if self.front is not None:
            points = [
                {"id": p.id, "losses": p.losses.tolist(), "meta": dict(p.meta)}
                for p in self.front.points
            ]
        return {
            "config": self.config.to_json(),
            "cost": self.cost if math.isfinite(self.cost) else None,
            "front": points,
            "trial_index": self.trial_index,
        }


@dataclass(frozen=True)
class Trajectory:
    trials: tuple
    incumbent_indices: tuple  # incumbent trial index after each step

    def incumbent(self) -> Trial:
        return self.trials[self.incumbent_indices[-1]]

    def to_json(self) -> dict:
        best = self.incumbent_indices[-1]
        return {
            "trials": [
                {**t.to_json(), "incumbent": i == best} for i, t in enumerate(self.trials)
            ],
            "incumbent_index": best,
        }


@dataclass(frozen=True)
class CostSpec:
    mode: str  # "preference" or "indicator"
    kind: str | None = None
    model: UtilityModel | None = None
    stats: FeatureStats | None = None

    def __post_init__(self):
        if self.mode == "indicator":
            if self.kind is None or self.model is not None:
                raise ValueError("indicator mode takes a kind and no model")
        elif self.mode == "preference":
            if self.model is None or self.kind is not None:
                raise ValueError("preference mode takes a model and no kind")
        else:
            raise ValueError(f"unknown cost mode: {self.mode!r}")


def cost(spec: CostSpec, front: ParetoFront, stats: FeatureStats | None = None) -> float:
    """Minimization-oriented scalar cost of a front under the given CostSpec."""
    if spec.mode == "preference":
        frozen = stats if stats is not None else spec.stats
        if frozen is None:
            raise ValueError("preference cost requires the frozen feature statistics")
        return -utility(spec.model, front_features(front, frozen))
    return {
        "HV": lambda f: -hypervolume(f),
        "SP": spacing,
        "MS": lambda f: -max_spread(f),
        "R2": r2_indicator,
    }[spec.kind](front)


@dataclass(frozen=True)
class ForestParams:
    trees: int = 10
    min_leaf: int = 3
    feature_subsample: float = 0.8


@dataclass(frozen=True)
class OptimizerConfig:
    budget: int = 30
    n_init: int = 8
    n_candidates: int = 1000
    forest: ForestParams = field(default_factory=ForestParams)
    seed: int = 0

    def __post_init__(self):
        if not (0 < self.n_init < self.budget) or self.n_candidates < 1:
            raise ValueError("need 0 < n_init < budget and n_candidates >= 1")


def encode_for_surrogate(cfg: Configuration, space: ConfigSpace) -> np.ndarray:
    """Map a configuration to [0, 1]^K: normalized log for log parameters."""
    coords = []
    for p in space.params:
        v = cfg[p.name]
        if p.log:
            coords.append(math.log(v / p.lo) / math.log(p.hi / p.lo))
        else:
            coords.append((v - p.lo) / (p.hi - p.lo))
    return np.array(coords)


def decode_from_surrogate(z: np.ndarray, space: ConfigSpace) -> Configuration:
    """Inverse of `encode_for_surrogate`; integers round at decode time."""
    values = {}
    for coord, p in zip(z, space.params):
        coord = min(max(float(coord), 0.0), 1.0)
        if p.log:
            v = p.lo * (p.hi / p.lo) ** coord
        else:
            v = p.lo + coord * (p.hi - p.lo)
        values[p.name] = p.clip(v)
    return Configuration(values=values)


def _evaluate(objective, cfg: Configuration, index: int) -> Trial:
    try:
        c, front = objective(cfg)
        c = float(c)
        if math.isnan(c):
            raise ValueError("objective returned NaN")
    except Exception:
        return Trial(config=cfg, cost=math.inf, front=None, trial_index=index)
    return Trial(config=cfg, cost=c, front=front, trial_index=index)


def _incumbent_index(trials) -> int:
    costs = [t.cost for t in trials]
    return int(np.argmin(costs))  # earliest trial wins ties


def fit_surrogate(X: np.ndarray, y: np.ndarray, params: ForestParams, seed: int) -> RandomForestRegressor:
    forest = RandomForestRegressor(
        n_estimators=params.trees,
        min_samples_leaf=params.min_leaf,
        max_features=params.feature_subsample,
        bootstrap=True,
        random_state=seed,
    )
    forest.fit(X, y)
    return forest


def _expected_improvement(mu: np.ndarray, sigma: np.ndarray, f_star: float) -> np.ndarray:
    improve = f_star - mu
    ei = np.maximum(improve, 0.0)  # zero-spread candidates keep the plug-in value
    active = sigma > 0
    if np.any(active):
        z = improve[active] / sigma[active]
        ei[active] = improve[active] * norm.cdf(z) + sigma[active] * norm.pdf(z)
    return ei


def optimize(objective, space: ConfigSpace, opt: OptimizerConfig = OptimizerConfig()) -> Trajectory:
    """Sequential model-based minimization of `objective` over `space`.

    `objective` maps a Configuration to (cost, front); failures are recorded
    as +inf trials and the loop continues. Deterministic under `opt.seed`.
    """
    rng = np.random.default_rng(opt.seed)
    dim = len(space.params)
    trials: list[Trial] = []
    incumbents: list[int] = []
    for i in range(opt.n_init):
        trials.append(_evaluate(objective, sample_config(space, rng), i))
        incumbents.append(_incumbent_index(trials))
    while len(trials) < opt.budget:
        X = np.stack([encode_for_surrogate(t.config, space) for t in trials])
        costs = np.array([t.cost for t in trials])
        finite = np.isfinite(costs)
        y = costs.copy()
        if not np.all(finite):
            worst = costs[finite].max() if np.any(finite) else 0.0
            y[~finite] = worst + 1.0
        forest = fit_surrogate(X, y, opt.forest, int(rng.integers(2**31 - 1)))
        n_fresh = opt.n_candidates // 2
        fresh = rng.random((n_fresh, dim))
        center = X[_incumbent_index(trials)]
        local = center + rng.normal(0.0, LOCAL_SEARCH_SIGMA, size=(opt.n_candidates - n_fresh, dim))
        candidates = np.clip(np.vstack([fresh, local]), 0.0, 1.0)
        per_tree = np.stack([tree.predict(candidates) for tree in forest.estimators_])
        mu, sigma = per_tree.mean(axis=0), per_tree.std(axis=0)
        if np.any(finite):
            f_star = float(costs[finite].min())
            ei = _expected_improvement(mu, sigma, f_star)
            chosen = int(np.argmax(ei))
        else:
            chosen = 0
        cfg = decode_from_surrogate(candidates[chosen], space)
        trials.append(_evaluate(objective, cfg, len(trials)))
        incumbents.append(_incumbent_index(trials))
    return Trajectory(trials=tuple(trials), incumbent_indices=tuple(incumbents))


def random_search(objective, space: ConfigSpace, budget: int, seed: int = 0) -> Trajectory:
    """Baseline: `budget` seeded random evaluations with incumbent tracking."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(seed)
    trials: list[Trial] = []
    incumbents: list[int] = []
    for i in range(budget):
        trials.append(_evaluate(objective, sample_config(space, rng), i))
        incumbents.append(_incumbent_index(trials))
    return Trajectory(trials=tuple(trials), incumbent_indices=tuple(incumbents))
