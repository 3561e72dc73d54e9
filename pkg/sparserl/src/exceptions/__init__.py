"""
예외 클래스들을 정의하는 패키지입니다.
"""

from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.exceptions.fold_partition_error import FoldPartitionError
from sparserl.src.exceptions.insufficient_curve_points_error import (
    InsufficientCurvePointsError,
)
from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.exceptions.non_symmetric_matrix_error import (
    NonSymmetricMatrixError,
)
from sparserl.src.exceptions.policy_coverage_error import PolicyCoverageError
from sparserl.src.exceptions.sparse_rl_error import SparseRLError

__all__ = [
    "SparseRLError",
    "InvalidInstanceError",
    "PolicyCoverageError",
    "FoldPartitionError",
    "NonSymmetricMatrixError",
    "InsufficientCurvePointsError",
    "ExperimentConfigError",
]
