"""Preference-learned Pareto-front quality indicators for multi-objective HPO."""

from .benchmark import (
    ConfigSpace,
    Configuration,
    DatasetProfile,
    EpochGrid,
    default_space,
    run_moml,
    sample_config,
)
from .features import (
    EncodingConfig,
    FeatureStats,
    LossMatrix,
    build_loss_matrix,
    encode,
    encode_front,
    fit_stats,
    front_features,
)
from .hpo import (
    CostSpec,
    OptimizerConfig,
    Trajectory,
    Trial,
    cost,
    encode_for_surrogate,
    optimize,
    random_search,
)
from .oracle import OracleConfig, build_pairs, label_pairs
from .pareto import (
    IDEAL,
    INDICATOR_DIRECTIONS,
    INDICATOR_KINDS,
    NADIR,
    ModelPoint,
    ParetoFront,
    dominates,
    hypervolume,
    indicator_value,
    max_spread,
    pareto_filter,
    r2_indicator,
    spacing,
)
from .ranking import (
    BreaksResult,
    CvResult,
    TiedRanking,
    cross_validate_ranker,
    fisher_jenks,
    kendall_tau_b,
    select_k_elbow,
    tied_ranking,
)
from .ranksvm import (
    PreferencePair,
    SvmExample,
    TrainConfig,
    UtilityModel,
    build_svm_dataset,
    predict_pref,
    train_linear_ranksvm,
    utility,
)

__version__ = "0.1.0"
