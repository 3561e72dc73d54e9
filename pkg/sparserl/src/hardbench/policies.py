"""탐색 정책: 어려운 인스턴스의 오라클 탐색 정책과 소규모 전수 탐색."""

from collections.abc import Sequence

import numpy as np

from sparserl.src.dp.occupancy import expected_covariance
from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.hardbench.models import X0, HardInstance
from sparserl.src.linmdp.models import SparseLinearMDP, StationaryPolicy
from sparserl.src.sparsereg.eigen import min_eigenvalue
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_START_MIXING = 0.1


def exploratory_policy_for(
    instance: HardInstance, start_mixing: float = DEFAULT_START_MIXING
) -> StationaryPolicy:
    """x₀ 에서 (1−η)·a_k⁰ + η·균등, x_i/x_u 에서 메뉴 균등, 흡수 상태에서 행동 0.

    η > 0 이면 모든 x₀ 행동 좌표가 방문되어 전체 Σ^π 가 정칙입니다.
    η = 0 은 a_k⁰ 결정적 경로입니다.

    Args:
        instance: k ≥ 1 인 어려운 인스턴스
        start_mixing: x₀ 균등 혼합 비율 η (0 ≤ η < 1)

    Raises:
        InvalidInstanceError: k = 0 (M₀ 에는 정보 상태 경로가 없음) 또는 η 범위 밖
    """
    if instance.k == 0:
        raise InvalidInstanceError("귀무 인스턴스 M₀ 에는 탐색 정책이 없습니다", "k")
    if not 0.0 <= start_mixing < 1.0:
        raise InvalidInstanceError(
            f"x₀ 혼합 비율은 [0, 1) 이어야 합니다: {start_mixing}", "start_mixing"
        )
    rows = []
    for state, n_actions in enumerate(instance.mdp.actions_per_state):
        if state == X0:
            row = np.full(n_actions, start_mixing / n_actions)
            row[instance.k - 1] += 1.0 - start_mixing
        else:
            row = np.full(n_actions, 1.0 / n_actions)
        rows.append(row)
    return StationaryPolicy(tuple(rows))


def exploratory_block_sigma_min(
    instance: HardInstance, policy: StationaryPolicy | None = None
) -> float:
    """θ 블록(좌표 0..d−1)에서의 σ_min(Σ^π).

    x₀ 행동 좌표의 대각 성분이 μ(x₀, a_j) ≤ η/(dH) 이므로 전체 σ_min 은 d 에
    반비례해 줄어듭니다. θ 블록 값은 (1 − η + η/d)/H 로 d 와 거의 무관하며,
    oracle 예산의 C_min 으로 씁니다.
    """
    policy = policy or exploratory_policy_for(instance)
    matrix = expected_covariance(instance.mdp, policy).matrix
    return min_eigenvalue(matrix[: instance.d, : instance.d])


def find_exploratory_policy_bruteforce(
    mdp: SparseLinearMDP,
    candidates: Sequence[StationaryPolicy],
    mixture_grid: int = 10,
) -> tuple[StationaryPolicy, float]:
    """후보 정책과 후보 쌍의 격자 혼합 전체에서 σ_min(Σ^π) 최대화.

    전이 커널 P 를 알아야 Σ^π 를 계산할 수 있으므로 실제 온라인 학습에서는 쓸 수
    없습니다. 쌍 수 100개 정도의 작은 인스턴스용입니다.

    Args:
        mdp: 환경
        candidates: 후보 정책 (비어 있으면 안 됨)
        mixture_grid: 혼합 가중치 격자 해상도 (1/grid 간격)

    Returns:
        (최대화 정책, 그 σ_min)
    """
    if not candidates:
        raise ValueError("후보 정책이 비어 있습니다")
    best_policy = candidates[0]
    best_sigma = expected_covariance(mdp, best_policy).sigma_min
    pool: list[StationaryPolicy] = list(candidates[1:])
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            for step in range(1, mixture_grid):
                pool.append(candidates[i].mix(candidates[j], step / mixture_grid))
    for policy in pool:
        sigma = expected_covariance(mdp, policy).sigma_min
        if sigma > best_sigma:
            best_policy, best_sigma = policy, sigma
    logger.debug(f"탐색 정책 전수 탐색: 후보 {len(pool) + 1}개, 최대 σ_min={best_sigma:.6g}")
    return best_policy, best_sigma
