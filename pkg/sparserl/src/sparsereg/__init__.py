"""
희소 선형 회귀(Lasso)와 고유값 진단 패키지
"""

from sparserl.src.sparsereg.eigen import max_eigenvalue, min_eigenvalue
from sparserl.src.sparsereg.lasso import (
    kkt_violation,
    lasso_fit,
    lasso_objective,
    regularization_strength,
    soft_threshold,
)
from sparserl.src.sparsereg.models import (
    LambdaMode,
    LassoConfig,
    RegressionDataset,
    RegressionFit,
    RestrictedEigenvalueInterval,
)
from sparserl.src.sparsereg.restricted_eigen import restricted_eigenvalue_estimate
from sparserl.src.sparsereg.ridge import ridge_fit

__all__ = [
    "max_eigenvalue",
    "min_eigenvalue",
    "kkt_violation",
    "lasso_fit",
    "lasso_objective",
    "regularization_strength",
    "soft_threshold",
    "LambdaMode",
    "LassoConfig",
    "RegressionDataset",
    "RegressionFit",
    "RestrictedEigenvalueInterval",
    "restricted_eigenvalue_estimate",
    "ridge_fit",
]
