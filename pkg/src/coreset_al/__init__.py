"""Core-set batch active learning: minimax-coverage selection, an exact
robust k-center solver, baseline acquisition strategies, a reference
learner, covering-radius bound calculators, and a simulation harness."""

from .data import DatasetFormatError, generate_synthetic, load_dataset, save_dataset
from .geometry import DistanceOracle, FeatureSet
from .harness import (
    CurveRow,
    ExperimentConfig,
    LearningCurve,
    PoolState,
    run_experiment,
    split_holdout,
)
from .kcenter import (
    FeasibilityProblem,
    FeasibilityResult,
    KCenterGreedy,
    KCenterSolution,
    RobustKCenter,
    feasible,
    k_center_greedy,
    robust_k_center,
)
from .learner import (
    CROSS_ENTROPY,
    L2_LOSS_BOUND,
    L2_ON_PROBABILITIES,
    LossVector,
    SoftmaxClassifier,
    one_hot,
    softmax,
)
from .plotting import emit_plot_data
from .strategies import (
    STRATEGY_IDS,
    AcquisitionRequest,
    CoreSetSampling,
    KMedoidsSampling,
    OracleLossSampling,
    QueryStrategy,
    RandomSampling,
    UncertaintySampling,
    make_strategy,
    select_coreset,
    select_kmedoids,
    select_oracle_uncertainty,
    select_random,
    select_uncertainty,
    shannon_entropy,
)
from .theory import (
    BoundInputs,
    LipschitzSpec,
    bound_terms,
    cnn_lipschitz_constant,
    coreset_loss,
    coreset_loss_bound,
    estimate_loss_lipschitz,
    max_incoming_weight_sum,
    softmax_jacobian_frobenius,
    softmax_lipschitz_max,
)

__version__ = "0.1.0"

__all__ = [
    "AcquisitionRequest",
    "BoundInputs",
    "CROSS_ENTROPY",
    "CoreSetSampling",
    "CurveRow",
    "DatasetFormatError",
    "DistanceOracle",
    "ExperimentConfig",
    "FeasibilityProblem",
    "FeasibilityResult",
    "FeatureSet",
    "KCenterGreedy",
    "KCenterSolution",
    "KMedoidsSampling",
    "L2_LOSS_BOUND",
    "L2_ON_PROBABILITIES",
    "LearningCurve",
    "LipschitzSpec",
    "LossVector",
    "OracleLossSampling",
    "PoolState",
    "QueryStrategy",
    "RandomSampling",
    "RobustKCenter",
    "STRATEGY_IDS",
    "SoftmaxClassifier",
    "UncertaintySampling",
    "bound_terms",
    "cnn_lipschitz_constant",
    "coreset_loss",
    "coreset_loss_bound",
    "emit_plot_data",
    "estimate_loss_lipschitz",
    "feasible",
    "generate_synthetic",
    "k_center_greedy",
    "load_dataset",
    "make_strategy",
    "max_incoming_weight_sum",
    "one_hot",
    "robust_k_center",
    "run_experiment",
    "save_dataset",
    "select_coreset",
    "select_kmedoids",
    "select_oracle_uncertainty",
    "select_random",
    "select_uncertainty",
    "shannon_entropy",
    "softmax",
    "softmax_jacobian_frobenius",
    "softmax_lipschitz_max",
    "split_holdout",
]
