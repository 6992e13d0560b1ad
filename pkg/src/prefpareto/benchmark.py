"""Synthetic multi-objective learner under optimization.

A closed-form stand-in for an epoch-grid DNN wrapper: given a hyperparameter
configuration it returns one model per epoch of a fixed grid, scored by
accuracy loss and normalized energy. Dataset variation comes from seeded
coefficient profiles, so every (configuration, profile) pair is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .pareto import ModelPoint


@dataclass(frozen=True)
class HyperParam:
    name: str
    kind: str  # "int" or "float"
    lo: float
    hi: float
    log: bool = False

    def sample(self, rng: np.random.Generator) -> float | int:
        if self.log:
            value = math.exp(rng.uniform(math.log(self.lo), math.log(self.hi)))
        else:
            value = rng.uniform(self.lo, self.hi)
        if self.kind == "int":
            return int(min(max(round(value), self.lo), self.hi))
        return float(value)

    def clip(self, value: float) -> float | int:
        value = min(max(value, self.lo), self.hi)
        return int(round(value)) if self.kind == "int" else float(value)


@dataclass(frozen=True)
class ConfigSpace:
    params: tuple

    def names(self) -> list[str]:
        return [p.name for p in self.params]

    def __getitem__(self, name: str) -> HyperParam:
        for p in self.params:
            if p.name == name:
                return p
        raise KeyError(name)

    def validate(self, config: "Configuration") -> None:
        for p in self.params:
            v = config[p.name]
            if not p.lo <= v <= p.hi:
                raise ValueError(f"{p.name}={v} outside [{p.lo}, {p.hi}]")
            if p.kind == "int" and int(v) != v:
                raise ValueError(f"{p.name}={v} must be an integer")


def default_space() -> ConfigSpace:
    """The 7-hyperparameter search space of the wrapped learner."""
    return ConfigSpace(
        params=(
            HyperParam("batch_size", "int", 16, 512, log=True),
            HyperParam("learning_rate", "float", 1e-4, 1e-1, log=True),
            HyperParam("momentum", "float", 0.1, 0.99),
            HyperParam("weight_decay", "float", 1e-5, 1e-1),
            HyperParam("n_layers", "int", 1, 5),
            HyperParam("n_units", "int", 64, 1024, log=True),
            HyperParam("dropout", "float", 0.0, 1.0),
        )
    )


@dataclass(frozen=True)
class Configuration:
    values: dict

    def __getitem__(self, name: str):
        return self.values[name]

    def to_json(self) -> dict:
        return dict(self.values)

    @classmethod
    def from_json(cls, doc: dict) -> "Configuration":
        return cls(values=dict(doc))


def sample_config(space: ConfigSpace, rng: np.random.Generator) -> Configuration:
    """Draw one configuration; log parameters are uniform in log space."""
    return Configuration(values={p.name: p.sample(rng) for p in space.params})


# Coefficient ranges of a dataset profile: mostly U[0.5, 2], the two optima
# locations U[0.2, 0.8], and the overfitting strength U[0, 0.3].
_PROFILE_RANGES = (
    (0.5, 2.0),
    (0.5, 2.0),
    (0.5, 2.0),
    (0.2, 0.8),
    (0.5, 2.0),
    (0.2, 0.8),
    (0.5, 2.0),
    (0.5, 2.0),
    (0.5, 2.0),
    (0.5, 2.0),
    (0.0, 0.3),
)


@dataclass(frozen=True)
class DatasetProfile:
    profile_id: int
    coefficients: tuple = field(default=())

    def __post_init__(self):
        if not self.coefficients:
            rng = np.random.default_rng(self.profile_id)
            coeffs = tuple(float(rng.uniform(lo, hi)) for lo, hi in _PROFILE_RANGES)
            object.__setattr__(self, "coefficients", coeffs)


@dataclass(frozen=True)
class EpochGrid:
    epochs: tuple = tuple(range(5, 51, 5))

    def __post_init__(self):
        eps = tuple(self.epochs)
        if not eps or any(e <= 0 for e in eps) or any(b <= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epoch grid must be strictly increasing positive integers")
        object.__setattr__(self, "epochs", eps)

    def __len__(self) -> int:
        return len(self.epochs)


def _sigmoid(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


#: power normalizer: the largest network at the smallest batch draws power 1.
MAX_POWER_NORM = (1024 * 5) / 16


def run_moml(cfg: Configuration, profile: DatasetProfile, grid: EpochGrid = EpochGrid()) -> list[ModelPoint]:
    """Evaluate one configuration: one model per grid epoch.

    Accuracy follows a saturating curve with a capability ceiling set by the
    architecture and an optional late overfitting decline under dropout;
    energy grows linearly in epochs with an architecture-dependent power draw.
    """
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11 = profile.coefficients
    u = math.log(cfg["n_units"] / 64) / math.log(16)
    l = (cfg["n_layers"] - 1) / 4
    lr = math.log(cfg["learning_rate"] / 1e-4) / math.log(1000)
    bs = math.log(cfg["batch_size"] / 16) / math.log(32)
    mom = (cfg["momentum"] - 0.1) / 0.89
    dr = cfg["dropout"]
    wd = math.log(cfg["weight_decay"] / 1e-5) / math.log(1e4)

    capability = 0.5 + 0.45 * math.tanh(
        a1 * u + a2 * l - a3 * (lr - a4) ** 2 - a5 * (dr - a6) ** 2 + a7 * mom - a8 * wd
    )
    rate = 0.02 + 0.3 * _sigmoid(a9 * lr - a10 * bs)
    power = (cfg["n_units"] * cfg["n_layers"]) / (cfg["batch_size"] * MAX_POWER_NORM)

    points = []
    for epoch in grid.epochs:
        accuracy = capability * (1.0 - math.exp(-rate * epoch))
        accuracy -= a11 * dr * max(0, epoch - 30) / 50
        accuracy = min(max(accuracy, 0.01), 0.99)
        losses = np.array([1.0 - accuracy, epoch * power / 50])
        points.append(ModelPoint(id=f"e{epoch:02d}", losses=losses, meta={"epoch": epoch}))
    return points
