"""Fixed-width feature encoding of model sets.

A model set is turned into a B x M loss matrix: rows sorted by energy, rows
dominated by the running non-dominated incumbent overwritten with the
incumbent's values, and missing rows forward-imputed by copying the last row.
The matrix is flattened row-major and standardized with statistics frozen
across the preliminary-sampling collection.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .pareto import N_OBJECTIVES, ParetoFront, _sort_key, dominates


@dataclass(frozen=True)
class EncodingConfig:
    B: int = 10
    M: int = N_OBJECTIVES
    order_key: int = 1

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("B must be >= 1")
        if self.M != N_OBJECTIVES:
            raise ValueError(f"M is fixed at {N_OBJECTIVES}")


@dataclass(frozen=True)
class LossMatrix:
    rows: np.ndarray  # (B, M)
    b_filled: int  # rows backed by actual models before padding

    def __post_init__(self):
        arr = np.asarray(self.rows, dtype=float)
        if arr.ndim != 2:
            raise ValueError("loss matrix must be 2-D")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("loss matrix entries must be finite and in [0, 1]")
        object.__setattr__(self, "rows", arr)

    def flatten(self) -> np.ndarray:
        return self.rows.reshape(-1)


@dataclass(frozen=True)
class FeatureStats:
    """Frozen per-position standardization statistics."""

    mean: np.ndarray
    std: np.ndarray
    n_fit: int

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        std = np.asarray(self.std, dtype=float)
        if mean.shape != std.shape or mean.ndim != 1:
            raise ValueError("mean and std must be 1-D arrays of equal length")
        if np.any(std < 0.0):
            raise ValueError("std entries must be non-negative")
        if self.n_fit < 1:
            raise ValueError("n_fit must be >= 1")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)

    def digest(self) -> str:
        """Stable identifier of the fitted statistics."""
        payload = json.dumps(
            {"mean": self.mean.tolist(), "std": self.std.tolist(), "n_fit": self.n_fit},
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist(), "n_fit": self.n_fit}

    @classmethod
    def from_json(cls, doc: dict) -> "FeatureStats":
        return cls(mean=np.asarray(doc["mean"]), std=np.asarray(doc["std"]), n_fit=doc["n_fit"])


def build_loss_matrix(models, cfg: EncodingConfig = EncodingConfig()) -> LossMatrix:
    """Build the sorted, staircase-replaced, forward-imputed loss matrix.

    Models are sorted ascending by the order-key loss (ties: other loss, then
    id). A row dominated by the running incumbent is overwritten with the
    incumbent's values, so only Pareto-optimal loss vectors remain; rows past
    the last model copy the final row.
    """
    pts = list(models)
    if not pts:
        raise ValueError("cannot encode an empty model set")
    if len(pts) > cfg.B:
        raise ValueError(f"model set of size {len(pts)} exceeds capacity B={cfg.B}")
    pts.sort(key=lambda p: _sort_key(p, cfg.order_key))
    rows = np.empty((cfg.B, cfg.M), dtype=float)
    rows[0] = pts[0].losses
    incumbent = pts[0].losses
    for b, p in enumerate(pts[1:], start=1):
        if dominates(incumbent, p.losses):
            rows[b] = incumbent
        else:
            rows[b] = p.losses
            incumbent = p.losses
    for b in range(len(pts), cfg.B):
        rows[b] = rows[b - 1]
    return LossMatrix(rows=rows, b_filled=len(pts))


def encode_front(front: ParetoFront, cfg: EncodingConfig = EncodingConfig()) -> LossMatrix:
    """Loss matrix of a Pareto front (the staircase pass is then a no-op)."""
    return build_loss_matrix(front.points, cfg)


def fit_stats(matrices) -> FeatureStats:
    """Population mean/std per flattened position across the given matrices."""
    mats = list(matrices)
    if not mats:
        raise ValueError("cannot fit statistics on an empty collection")
    flat = np.stack([m.flatten() for m in mats])
    if any(m.rows.shape != mats[0].rows.shape for m in mats):
        raise ValueError("all loss matrices must share the same shape")
    return FeatureStats(mean=flat.mean(axis=0), std=flat.std(axis=0), n_fit=len(mats))


def encode(matrix: LossMatrix, stats: FeatureStats) -> np.ndarray:
    """Flatten row-major and standardize; zero-variance positions map to 0."""
    flat = matrix.flatten()
    if flat.shape != stats.mean.shape:
        raise ValueError(f"matrix/stats dimension mismatch: {flat.shape} vs {stats.mean.shape}")
    out = np.zeros_like(flat)
    nz = stats.std > 0.0
    out[nz] = (flat[nz] - stats.mean[nz]) / stats.std[nz]
    return out


def front_features(front: ParetoFront, stats: FeatureStats, cfg: EncodingConfig = EncodingConfig()) -> np.ndarray:
    """Standardized feature vector of a front under frozen statistics."""
    return encode(encode_front(front, cfg), stats)
