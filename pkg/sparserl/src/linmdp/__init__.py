"""
희소 선형 MDP 데이터 모델과 궤적 시뮬레이션 패키지
"""

from sparserl.src.linmdp.feature_map import FeatureMap, build_tabular_feature_map
from sparserl.src.linmdp.generators import (
    make_random_sparse_mdp,
    make_random_tabular_mdp,
    make_tabular_mdp,
)
from sparserl.src.linmdp.models import (
    NonstationaryPolicy,
    Phase,
    Policy,
    SparseLinearMDP,
    StationaryPolicy,
    Trajectory,
    Transition,
)
from sparserl.src.linmdp.serialization import (
    InstanceDocument,
    dump_instance,
    load_instance,
    load_instance_document,
)
from sparserl.src.linmdp.simulation import sample_episode, sample_initial_states
from sparserl.src.linmdp.validation import (
    ValidationReport,
    Violation,
    ViolationKind,
    validate_mdp,
)

__all__ = [
    "FeatureMap",
    "build_tabular_feature_map",
    "make_random_sparse_mdp",
    "make_random_tabular_mdp",
    "make_tabular_mdp",
    "NonstationaryPolicy",
    "Phase",
    "Policy",
    "SparseLinearMDP",
    "StationaryPolicy",
    "Trajectory",
    "Transition",
    "InstanceDocument",
    "dump_instance",
    "load_instance",
    "load_instance_document",
    "sample_episode",
    "sample_initial_states",
    "ValidationReport",
    "Violation",
    "ViolationKind",
    "validate_mdp",
]
