"""
하한 어려운 인스턴스 생성과 진단 패키지
"""

from sparserl.src.hardbench.builder import (
    attach_alternative,
    build_alternative_instance,
    build_hard_instance,
    theta_vector,
    uninformative_optimal_value,
)
from sparserl.src.hardbench.diagnostics import (
    hard_run_diagnostics,
    null_instance_agreement,
    select_z_tilde,
    stepwise_kl,
    stopping_time,
    x_u_visitation_trace,
    x_u_visitation_weights,
)
from sparserl.src.hardbench.feature_sets import (
    a2_menu,
    a3_menu,
    is_s_prime_member,
    s_prime_candidates,
    s_prime_patterns,
    sparse_sign_patterns,
)
from sparserl.src.hardbench.models import (
    HardDiagnostics,
    HardInstance,
    KLResult,
    RewardConvention,
)
from sparserl.src.hardbench.policies import (
    DEFAULT_START_MIXING,
    exploratory_block_sigma_min,
    exploratory_policy_for,
    find_exploratory_policy_bruteforce,
)

__all__ = [
    "attach_alternative",
    "build_alternative_instance",
    "build_hard_instance",
    "theta_vector",
    "uninformative_optimal_value",
    "hard_run_diagnostics",
    "null_instance_agreement",
    "select_z_tilde",
    "stepwise_kl",
    "stopping_time",
    "x_u_visitation_trace",
    "x_u_visitation_weights",
    "a2_menu",
    "a3_menu",
    "is_s_prime_member",
    "s_prime_candidates",
    "s_prime_patterns",
    "sparse_sign_patterns",
    "HardDiagnostics",
    "HardInstance",
    "KLResult",
    "RewardConvention",
    "DEFAULT_START_MIXING",
    "exploratory_block_sigma_min",
    "exploratory_policy_for",
    "find_exploratory_policy_bruteforce",
]
