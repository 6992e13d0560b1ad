"""Learn a Pareto-front utility from pairwise preferences of a simulated user.

The simulated user compares pairs of sampled fronts according to a quality
indicator they could not name themselves; a linear RankSVM on the fronts'
standardized loss-matrix features recovers a utility that reproduces the
user's ranking, evaluated by cross-validated Kendall tau.

Run:  python3 demos/preference_learning.py
"""

import numpy as np

from prefpareto import (
    OracleConfig,
    TrainConfig,
    build_pairs,
    build_svm_dataset,
    cross_validate_ranker,
    encode_front,
    fit_stats,
    front_features,
    label_pairs,
    train_linear_ranksvm,
    utility,
)
from prefpareto.experiments import sample_experiment_fronts

PROFILE, SEED = 1000, 0

fronts = sample_experiment_fronts(PROFILE, n_fronts=40, seed=SEED)
print(f"sampled {len(fronts)} fronts from profile {PROFILE}")

stats = fit_stats([encode_front(f) for f in fronts])
features = {i: front_features(f, stats) for i, f in enumerate(fronts)}

pairs = build_pairs(fronts, limit=28, seed=SEED)
prefs = label_pairs(pairs, fronts, OracleConfig(kind="HV"))
print(f"simulated hypervolume user labeled {len(prefs)} of {len(pairs)} pairs")

model = train_linear_ranksvm(build_svm_dataset(prefs, features), TrainConfig(reg=0.01))
scores = [utility(model, features[i]) for i in range(len(fronts))]
print("utility of the first five sampled fronts:", [round(s, 3) for s in scores[:5]])

print("\n5-fold cross-validated tau against the indicator's tied ranking:")
for n_pairs in (28, 56, 112):
    result = cross_validate_ranker(fronts, "HV", n_pairs, TrainConfig(reg=0.01), seed=SEED)
    print(f"  {n_pairs:3d} pairs -> tau {result.tau_mean:.3f} +- {result.tau_std:.3f}")
