"""End to end: a simulated user's preferences steer hyperparameter search.

Compares preference-based optimization (learned utility as the cost) against
indicator-based optimization with the matching and with a mismatched
indicator, on one synthetic dataset profile.

Run:  python3 demos/utility_driven_hpo.py
"""

import numpy as np

from prefpareto import (
    CostSpec,
    DatasetProfile,
    OptimizerConfig,
    OracleConfig,
    TrainConfig,
    build_pairs,
    build_svm_dataset,
    cost,
    default_space,
    encode_front,
    fit_stats,
    front_features,
    indicator_value,
    label_pairs,
    optimize,
    pareto_filter,
    run_moml,
    train_linear_ranksvm,
)
from prefpareto.experiments import sample_experiment_fronts

PROFILE_ID, SEED, BUDGET = 0, 0, 30
USER_INDICATOR = "HV"  # what the simulated user actually cares about

profile = DatasetProfile(PROFILE_ID)
space = default_space()

# phase 1: preliminary sampling
fronts = sample_experiment_fronts(PROFILE_ID, n_fronts=40, seed=SEED)
stats = fit_stats([encode_front(f) for f in fronts])
features = {i: front_features(f, stats) for i, f in enumerate(fronts)}

# phase 2: 28 pairwise comparisons, labeled by the hidden indicator
pairs = build_pairs(fronts, limit=28, seed=SEED)
prefs = label_pairs(pairs, fronts, OracleConfig(kind=USER_INDICATOR))
model = train_linear_ranksvm(
    build_svm_dataset(prefs, features), TrainConfig(reg=0.01), stats_ref=stats.digest()
)

# phase 3: surrogate-based optimization with three different costs
def run(spec):
    def objective(cfg):
        front = pareto_filter(run_moml(cfg, profile))
        return cost(spec, front, stats), front

    trajectory = optimize(objective, space, OptimizerConfig(budget=BUDGET, seed=SEED))
    return trajectory.incumbent().front


arms = {
    "preference-based (learned utility)": CostSpec(mode="preference", model=model, stats=stats),
    "indicator-based, matching (HV)": CostSpec(mode="indicator", kind="HV"),
    "indicator-based, mismatched (SP)": CostSpec(mode="indicator", kind="SP"),
}

print(f"simulated user cares about {USER_INDICATOR}; budget {BUDGET} evaluations\n")
for name, spec in arms.items():
    front = run(spec)
    score = indicator_value(USER_INDICATOR, front)
    losses = np.round(front.losses_array(), 3).tolist()
    print(f"{name}")
    print(f"  final {USER_INDICATOR} = {score:.4f}, front size {len(front)}")
    print(f"  front: {losses}\n")
