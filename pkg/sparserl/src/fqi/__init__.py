"""
Lasso fitted-Q-iteration 학습 단계 패키지
"""

from sparserl.src.fqi.lasso_fqi import (
    LassoRegressor,
    Regressor,
    RidgeRegressor,
    greedy_policy,
    lasso_fqi,
    q_values,
    resolve_lasso_config,
    state_values,
)
from sparserl.src.fqi.models import EpisodeBatch, MDPView, WeightStack
from sparserl.src.fqi.oracle import oracle_bellman_weights
from sparserl.src.fqi.partition import partition_folds

__all__ = [
    "LassoRegressor",
    "Regressor",
    "RidgeRegressor",
    "greedy_policy",
    "lasso_fqi",
    "q_values",
    "resolve_lasso_config",
    "state_values",
    "EpisodeBatch",
    "MDPView",
    "WeightStack",
    "oracle_bellman_weights",
    "partition_folds",
]
