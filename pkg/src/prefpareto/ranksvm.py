"""Linear RankSVM over pairwise front preferences.

Each preference contributes an antisymmetric pair of difference examples
(f_winner - f_loser, +1) and (f_loser - f_winner, -1). A linear SVM without
intercept is trained on these by deterministic full-batch subgradient descent;
its weight vector defines the utility score of a front.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PREDICT_EPS = 1e-12


@dataclass(frozen=True)
class PreferencePair:
    winner: int
    loser: int
    source: str = "simulated"

    def __post_init__(self):
        if self.winner == self.loser:
            raise ValueError("a preference pair needs two distinct fronts")


@dataclass(frozen=True)
class SvmExample:
    x: np.ndarray
    y: int


@dataclass(frozen=True)
class TrainConfig:
    reg: float = 1.0
    max_epochs: int = 2000
    tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.reg <= 0 or self.max_epochs < 1 or self.tol <= 0:
            raise ValueError("invalid training configuration")

    def to_json(self) -> dict:
        return {"reg": self.reg, "max_epochs": self.max_epochs, "tol": self.tol, "seed": self.seed}

    @classmethod
    def from_json(cls, doc: dict) -> "TrainConfig":
        return cls(**doc)


@dataclass(frozen=True)
class UtilityModel:
    """Learned utility u(front) = w . features(front)."""

    w: np.ndarray
    train_config: TrainConfig
    stats_ref: str
    objective_history: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1 or not np.all(np.isfinite(w)):
            raise ValueError("weight vector must be a finite 1-D array")
        object.__setattr__(self, "w", w)

    def to_json(self) -> dict:
        return {
            "w": self.w.tolist(),
            "stats_ref": self.stats_ref,
            "train_config": self.train_config.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "UtilityModel":
        return cls(
            w=np.asarray(doc["w"]),
            stats_ref=doc["stats_ref"],
            train_config=TrainConfig.from_json(doc["train_config"]),
        )


def build_svm_dataset(prefs, features: dict) -> list[SvmExample]:
    """Antisymmetric difference dataset: two examples per preference pair."""
    examples: list[SvmExample] = []
    for pref in prefs:
        try:
            fw, fl = features[pref.winner], features[pref.loser]
        except KeyError as missing:
            raise KeyError(f"no feature vector for front {missing}") from None
        diff = np.asarray(fw, dtype=float) - np.asarray(fl, dtype=float)
        examples.append(SvmExample(x=diff, y=+1))
        examples.append(SvmExample(x=-diff, y=-1))
    return examples


def _objective(w: np.ndarray, X: np.ndarray, y: np.ndarray, reg: float) -> float:
    margins = y * (X @ w)
    hinge = np.maximum(0.0, 1.0 - margins).mean()
    return 0.5 * reg * float(w @ w) + float(hinge)


def train_linear_ranksvm(data, cfg: TrainConfig = TrainConfig(), stats_ref: str = "") -> UtilityModel:
    """Minimize (reg/2)||w||^2 + mean hinge loss by full-batch subgradient descent.

    Steps follow the 1/(reg * t) schedule, there is no intercept, and training
    stops once the objective change falls below `tol` or after `max_epochs`.
    Deterministic for a given dataset and configuration.
    """
    examples = list(data)
    if not examples:
        raise ValueError("cannot train on an empty dataset")
    X = np.stack([ex.x for ex in examples]).astype(float)
    y = np.array([ex.y for ex in examples], dtype=float)
    if not np.all(np.isfinite(X)):
        raise ValueError("feature differences contain non-finite values")
    n, d = X.shape
    w = np.zeros(d)
    history = [_objective(w, X, y, cfg.reg)]
    for t in range(1, cfg.max_epochs + 1):
        margins = y * (X @ w)
        violators = margins < 1.0
        grad = cfg.reg * w - (y[violators, None] * X[violators]).sum(axis=0) / n
        w = w - grad / (cfg.reg * t)
        history.append(_objective(w, X, y, cfg.reg))
        if abs(history[-2] - history[-1]) < cfg.tol:
            break
    return UtilityModel(
        w=w, train_config=cfg, stats_ref=stats_ref, objective_history=tuple(history)
    )


def utility(model: UtilityModel, feat: np.ndarray) -> float:
    feat = np.asarray(feat, dtype=float)
    if feat.shape != model.w.shape:
        raise ValueError(f"feature dimension mismatch: {feat.shape} vs {model.w.shape}")
    return float(model.w @ feat)


def predict_pref(model: UtilityModel, f1: np.ndarray, f2: np.ndarray) -> str:
    """Rank two feature vectors: 'first', 'second', or 'tie'."""
    u1, u2 = utility(model, f1), utility(model, f2)
    if u1 > u2 + PREDICT_EPS:
        return "first"
    if u2 > u1 + PREDICT_EPS:
        return "second"
    return "tie"
