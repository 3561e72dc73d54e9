"""실험용 MDP 인스턴스 생성기."""

import numpy as np

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.linmdp.feature_map import FeatureMap, build_tabular_feature_map
from sparserl.src.linmdp.models import SparseLinearMDP
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)


def make_random_sparse_mdp(
    num_states: int,
    num_actions: int,
    d: int,
    s: int,
    horizon: int,
    seed: int,
    nuisance_scale: float = 0.0,
) -> SparseLinearMDP:
    """전이 커널이 정확히 s개 활성 좌표를 통과하는 무작위 희소 선형 MDP를 만듭니다.

    s개의 앵커 분포 ψ_k를 균등 난수를 정규화해 만들고, 쌍마다 앵커 위의 볼록 가중치를
    활성 좌표에 넣습니다. 가장 큰 가중치가 1이 되도록 φ를 키우고 그 배율을 ψ에 나눠
    반영하므로 전이 확률은 변하지 않습니다. nuisance_scale > 0 이면 비활성 좌표를
    [-nuisance_scale, nuisance_scale] 균등 잡음 특징으로 채웁니다 (전이에는 영향 없음).

    s = d = num_states * num_actions 이면 원-핫 특징의 무작위 테이블형 MDP가 됩니다.

    Args:
        num_states: 상태 수
        num_actions: 상태당 행동 수
        d: 특징 차원
        s: 활성 좌표 수
        horizon: 에피소드 길이
        seed: 난수 시드
        nuisance_scale: 비활성 좌표 잡음 특징 크기 (0 이상 1 이하)

    Returns:
        SparseLinearMDP: validate_mdp를 통과하는 인스턴스

    Raises:
        InvalidInstanceError: 파라미터가 실현 불가능한 경우
    """
    if min(num_states, num_actions, d, s, horizon) < 1:
        raise InvalidInstanceError("모든 크기 파라미터는 양수여야 합니다")
    if s > d:
        raise InvalidInstanceError(f"s={s}가 d={d}보다 클 수 없습니다", "s")
    if not 0.0 <= nuisance_scale <= 1.0:
        raise InvalidInstanceError(
            f"nuisance_scale은 [0, 1] 범위여야 합니다: {nuisance_scale}", "nuisance_scale"
        )

    rng = np.random.default_rng(seed)
    n_pairs = num_states * num_actions

    if s == d == n_pairs:
        feature_map = build_tabular_feature_map(num_states, num_actions)
        raw = rng.random((n_pairs, num_states))
        factors = raw / raw.sum(axis=1, keepdims=True)
        active_set = tuple(range(d))
    else:
        active_set = tuple(sorted(int(k) for k in rng.choice(d, size=s, replace=False)))
        anchors = rng.random((s, num_states))
        anchors /= anchors.sum(axis=1, keepdims=True)
        weights = rng.random((n_pairs, s))
        weights /= weights.sum(axis=1, keepdims=True)
        scale = float(weights.max())
        table = np.zeros((n_pairs, d))
        table[:, list(active_set)] = weights / scale
        factors = anchors * scale
        if nuisance_scale > 0.0:
            inactive = [k for k in range(d) if k not in active_set]
            table[:, inactive] = rng.uniform(
                -nuisance_scale, nuisance_scale, size=(n_pairs, len(inactive))
            )
        feature_map = FeatureMap(table)

    rewards = rng.random(n_pairs)
    xi0 = rng.random(num_states)
    xi0 /= xi0.sum()

    logger.debug(
        f"무작위 희소 MDP 생성: |X|={num_states}, |A|={num_actions}, d={d}, s={s}, "
        f"H={horizon}, seed={seed}, K={active_set}"
    )
    return SparseLinearMDP(
        feature_map=feature_map,
        factors=factors,
        active_set=active_set,
        sparsity=s,
        horizon=horizon,
        rewards=rewards,
        initial_distribution=xi0,
        actions_per_state=(num_actions,) * num_states,
    )


def make_tabular_mdp(
    transitions: np.ndarray,
    rewards: np.ndarray,
    horizon: int,
    initial_distribution: np.ndarray | None = None,
) -> SparseLinearMDP:
    """전이 텐서 P[x, a, x']와 보상 r[x, a]로 원-핫 특징의 테이블형 MDP를 만듭니다.

    ψ는 쌍별 전이 분포 그 자체이고 활성 좌표는 전체 d개입니다.
    """
    transitions = np.asarray(transitions, dtype=np.float64)
    rewards = np.asarray(rewards, dtype=np.float64)
    if transitions.ndim != 3 or transitions.shape[0] != transitions.shape[2]:
        raise InvalidInstanceError("전이 텐서는 (X, A, X) 모양이어야 합니다", "transitions")
    num_states, num_actions, _ = transitions.shape
    if rewards.shape != (num_states, num_actions):
        raise InvalidInstanceError("보상은 (X, A) 모양이어야 합니다", "rewards")
    if initial_distribution is None:
        initial_distribution = np.full(num_states, 1.0 / num_states)

    d = num_states * num_actions
    return SparseLinearMDP(
        feature_map=build_tabular_feature_map(num_states, num_actions),
        factors=transitions.reshape(d, num_states),
        active_set=tuple(range(d)),
        sparsity=d,
        horizon=horizon,
        rewards=rewards.reshape(d),
        initial_distribution=initial_distribution,
        actions_per_state=(num_actions,) * num_states,
    )


def make_random_tabular_mdp(
    num_states: int,
    num_actions: int,
    horizon: int,
    seed: int,
    deterministic: bool = False,
) -> SparseLinearMDP:
    """무작위 테이블형 MDP. deterministic이면 쌍마다 다음 상태가 하나로 고정됩니다."""
    rng = np.random.default_rng(seed)
    transitions = np.zeros((num_states, num_actions, num_states))
    if deterministic:
        next_states = rng.integers(0, num_states, size=(num_states, num_actions))
        for state in range(num_states):
            transitions[state, np.arange(num_actions), next_states[state]] = 1.0
    else:
        raw = rng.random((num_states, num_actions, num_states))
        transitions = raw / raw.sum(axis=2, keepdims=True)
    rewards = rng.random((num_states, num_actions))
    return make_tabular_mdp(transitions, rewards, horizon)
