"""
정확한 유한 horizon 동적 계획법 패키지
"""

from sparserl.src.dp.bellman import (
    bellman_backup,
    max_over_menus,
    optimal_values,
    policy_values,
)
from sparserl.src.dp.models import (
    CovarianceReport,
    OccupancyTable,
    ValueSequence,
)
from sparserl.src.dp.occupancy import (
    attach_restricted_eigenvalue,
    expected_covariance,
    occupancy_frequencies,
)

__all__ = [
    "bellman_backup",
    "max_over_menus",
    "optimal_values",
    "policy_values",
    "CovarianceReport",
    "OccupancyTable",
    "ValueSequence",
    "attach_restricted_eigenvalue",
    "expected_covariance",
    "occupancy_frequencies",
]
