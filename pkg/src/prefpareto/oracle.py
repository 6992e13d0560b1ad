"""Simulated user labeling Pareto-front pairs by a quality indicator."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .pareto import INDICATOR_DIRECTIONS, INDICATOR_KINDS, indicator_value
from .ranksvm import PreferencePair


@dataclass(frozen=True)
class OracleConfig:
    kind: str
    direction: str | None = None
    tie_mode: str = "strict"  # "strict" drops exact ties, "jenks" drops same-bucket pairs

    def __post_init__(self):
        if self.kind not in INDICATOR_KINDS:
            raise ValueError(f"unknown indicator kind: {self.kind!r}")
        if self.tie_mode not in ("strict", "jenks"):
            raise ValueError(f"unknown tie mode: {self.tie_mode!r}")
        if self.direction is None:
            object.__setattr__(self, "direction", INDICATOR_DIRECTIONS[self.kind])


def build_pairs(fronts, limit: int | None = None, seed: int = 0) -> list[tuple[int, int]]:
    """All unordered index pairs of fronts, optionally a seeded subsample."""
    n = len(list(fronts))
    if n < 2:
        raise ValueError("need at least two fronts to build pairs")
    pairs = list(itertools.combinations(range(n), 2))
    if limit is None:
        return pairs
    if not 1 <= limit <= len(pairs):
        raise ValueError(f"limit must be in [1, {len(pairs)}], got {limit}")
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(pairs), size=limit, replace=False)
    return [pairs[i] for i in sorted(idx)]


def label_pairs(pairs, fronts, cfg: OracleConfig) -> list[PreferencePair]:
    """Label each pair by the indicator; incomparable pairs are dropped.

    Strict mode drops only exactly equal indicator values; jenks mode drops
    pairs whose fronts share a tie bucket of the full front set's ranking.
    """
    fronts = list(fronts)
    values = [indicator_value(cfg.kind, f) for f in fronts]
    if cfg.tie_mode == "jenks":
        from .ranking import tied_ranking  # deferred: ranking uses this module

        ranks = dict(tied_ranking(fronts, cfg.kind, cfg.direction).items)
    prefs = []
    for a, b in pairs:
        if cfg.tie_mode == "jenks" and ranks[a] == ranks[b]:
            continue
        if values[a] == values[b]:
            continue
        a_wins = values[a] > values[b] if cfg.direction == "maximize" else values[a] < values[b]
        winner, loser = (a, b) if a_wins else (b, a)
        prefs.append(PreferencePair(winner=winner, loser=loser, source="simulated"))
    return prefs


def preference_log_lines(prefs, kind: str) -> list[str]:
    """JSON-lines serialization of a preference log."""
    import json

    return [
        json.dumps(
            {"winner": p.winner, "loser": p.loser, "source": p.source, "oracle": kind},
            sort_keys=True,
        )
        for p in prefs
    ]
