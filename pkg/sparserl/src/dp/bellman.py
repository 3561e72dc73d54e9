"""정확한 유한 horizon 벨만 백업과 후진 귀납 (backward induction)."""

import numpy as np

from sparserl.src.dp.models import ValueSequence
from sparserl.src.linmdp.models import Policy, SparseLinearMDP


def bellman_backup(mdp: SparseLinearMDP, value_next: np.ndarray) -> np.ndarray:
    """[T V](x,a) = r(x,a) + Σ_{x'} P(x'|x,a)·V(x') 를 쌍별로 계산합니다.

    Args:
        mdp: 환경
        value_next: 상태별 다음 단계 가치

    Returns:
        np.ndarray: 쌍별 백업 값
    """
    value_next = np.asarray(value_next, dtype=np.float64)
    if value_next.shape != (mdp.n_states,):
        raise ValueError(
            f"value_next 길이 {value_next.shape}가 상태 수 {mdp.n_states}와 다릅니다"
        )
    return mdp.rewards + mdp.transition_table @ value_next


def max_over_menus(
    offsets: np.ndarray, pair_values: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """상태별 메뉴에서 최댓값과 argmax(동률이면 가장 작은 행동 인덱스)를 구합니다.

    Args:
        offsets: 상태별 쌍 오프셋 (길이 상태 수 + 1)
        pair_values: 쌍별 값

    Returns:
        (상태별 최댓값, 상태별 argmax 행동)
    """
    n_states = offsets.size - 1
    maxima = np.maximum.reduceat(pair_values, offsets[:-1])
    argmax = np.empty(n_states, dtype=np.int64)
    for state in range(n_states):
        argmax[state] = int(np.argmax(pair_values[offsets[state] : offsets[state + 1]]))
    return maxima, argmax


def optimal_values(mdp: SparseLinearMDP) -> ValueSequence:
    """V*_h, Q*_h 를 h = H..1 후진 귀납으로 계산합니다."""
    horizon = mdp.horizon
    values = np.zeros((horizon + 1, mdp.n_states))
    q_values = np.zeros((horizon, mdp.n_pairs))
    greedy = np.zeros((horizon, mdp.n_states), dtype=np.int64)
    for step in range(horizon - 1, -1, -1):
        q_values[step] = bellman_backup(mdp, values[step + 1])
        values[step], greedy[step] = max_over_menus(mdp.pair_offsets, q_values[step])
    return ValueSequence(values=values, q_values=q_values, greedy_actions=greedy)


def policy_values(mdp: SparseLinearMDP, policy: Policy) -> ValueSequence:
    """정책 π의 V^π_h, Q^π_h 를 후진 귀납으로 계산합니다.

    Raises:
        PolicyCoverageError: 정책이 어떤 상태를 정의하지 않는 경우
    """
    horizon = mdp.horizon
    values = np.zeros((horizon + 1, mdp.n_states))
    q_values = np.zeros((horizon, mdp.n_pairs))
    starts = mdp.pair_offsets[:-1]
    for step in range(horizon - 1, -1, -1):
        q_values[step] = bellman_backup(mdp, values[step + 1])
        weights = policy.pair_weights(mdp, step)
        values[step] = np.add.reduceat(weights * q_values[step], starts)
    return ValueSequence(values=values, q_values=q_values)
