"""어려운 인스턴스 진단: 정지 시점, 사건 D_k, z̃ 선택, 단계별 KL, 귀무 인스턴스 비교."""

from collections.abc import Sequence

import numpy as np
from scipy.special import rel_entr

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.hardbench.builder import CANDIDATE_STREAM, menu_stream
from sparserl.src.hardbench.feature_sets import s_prime_candidates
from sparserl.src.hardbench.models import (
    X0,
    XG,
    XU,
    HardDiagnostics,
    HardInstance,
    KLResult,
)
from sparserl.src.linmdp.models import Trajectory
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

TIE_TOLERANCE = 1e-12
TABLE_TOLERANCE = 1e-12


def stopping_time(
    trajectories: Sequence[Trajectory], instance: HardInstance, total_episodes: int
) -> int:
    """τ_k = min(N, a_k⁰ 를 처음 고른 에피소드 번호), 번호는 1부터."""
    target = instance.k - 1
    for index, trajectory in enumerate(trajectories[:total_episodes]):
        first = trajectory.steps[0]
        if first.state == X0 and first.action == target:
            return index + 1
    return total_episodes


def x_u_visitation_trace(
    trajectories: Sequence[Trajectory], instance: HardInstance, upto: int | None = None
) -> np.ndarray:
    """에피소드별 x_u 행동 방문 횟수, 모양 (에피소드 수, |A₂|)."""
    episodes = trajectories if upto is None else trajectories[:upto]
    trace = np.zeros((len(episodes), instance.mdp.actions_per_state[XU]))
    for row, trajectory in enumerate(episodes):
        for transition in trajectory.steps:
            if transition.state == XU:
                trace[row, transition.action] += 1.0
    return trace


def x_u_visitation_weights(
    trajectories: Sequence[Trajectory], instance: HardInstance, upto: int | None = None
) -> np.ndarray:
    """x_u 행동별 방문 횟수 합 (z̃ 선택 가중치)."""
    return x_u_visitation_trace(trajectories, instance, upto).sum(axis=0)


def select_z_tilde(
    instance: HardInstance, visitation_weights: np.ndarray
) -> np.ndarray:
    """S′ 후보 중 Σ_a w_a·⟨φ(x_u,a), z⟩² 최소인 z (동률이면 사전순 최소).

    Raises:
        InvalidInstanceError: 후보 집합이 비어 있거나 가중치 길이가 메뉴와 다른 경우
    """
    weights = np.asarray(visitation_weights, dtype=np.float64)
    n_actions = instance.mdp.actions_per_state[XU]
    if weights.shape != (n_actions,):
        raise InvalidInstanceError(
            f"방문 가중치 길이 {weights.shape}가 x_u 메뉴 크기 {n_actions}와 다릅니다"
        )
    candidates = s_prime_candidates(
        instance.d,
        instance.s,
        instance.action_cap,
        menu_stream(instance.seed, CANDIDATE_STREAM),
    )
    start = instance.mdp.pair_offsets[XU]
    features = instance.mdp.phi[start : start + n_actions, : instance.d]
    scores = weights @ (features @ candidates.T) ** 2
    best = int(np.flatnonzero(scores <= scores.min() + TIE_TOLERANCE)[0])
    logger.debug(f"z̃ 선택: 후보 {len(candidates)}개, 최소 점수={scores[best]:.6g}")
    return candidates[best]


def _bernoulli_kl(q: np.ndarray, q_alt: np.ndarray) -> np.ndarray:
    return rel_entr(q, q_alt) + rel_entr(1.0 - q, 1.0 - q_alt)


def stepwise_kl(
    instance: HardInstance, alternative: HardInstance, trace: np.ndarray
) -> KLResult:
    """KL(P_k ‖ P̃_k) 를 x_u 행동 베르누이 KL의 가중합으로 정확히 계산합니다.

    trace 는 instance 의 x_u 메뉴 기준 행동 가중치이며 (단계 수, |A₂|) 또는 (|A₂|,)
    모양입니다. 행동은 부호 패턴으로 대안 메뉴에 대응시키고, 어느 쪽에서든 클램프된
    행동은 제외합니다. 값은 예외 없이 플래그로 보고합니다.
    """
    trace = np.atleast_2d(np.asarray(trace, dtype=np.float64))
    n_actions = instance.mdp.actions_per_state[XU]
    if trace.shape[1] != n_actions:
        raise InvalidInstanceError(
            f"trace 열 수 {trace.shape[1]}가 x_u 메뉴 크기 {n_actions}와 다릅니다"
        )
    kl_terms = np.zeros(n_actions)
    excluded: list[int] = []
    unmatched: list[int] = []
    for action in range(n_actions):
        matched = alternative.pattern_index(instance.a2_patterns[action])
        if matched is None:
            unmatched.append(action)
            continue
        if instance.clamped[action] or alternative.clamped[matched]:
            excluded.append(action)
            continue
        q = instance.mdp.transition_table[instance.x_u_pair(action), XG]
        q_alt = alternative.mdp.transition_table[alternative.x_u_pair(matched), XG]
        kl_terms[action] = float(_bernoulli_kl(np.float64(q), np.float64(q_alt)))

    used = np.ones(n_actions, dtype=bool)
    used[excluded + unmatched] = False
    with np.errstate(invalid="ignore"):
        weighted = np.where(trace[:, used] > 0.0, trace[:, used] * kl_terms[used], 0.0)
    contributions = weighted.sum(axis=1)
    total = float(contributions.sum())
    infinite = bool(np.isinf(total))
    bound = instance.kl_bound
    result = KLResult(
        contributions=tuple(float(c) for c in contributions),
        total=total,
        bound=bound,
        infinite=infinite,
        bound_applies=instance.epsilon <= 1.0 / (10 * (instance.s - 1)),
        excluded_actions=tuple(excluded),
        unmatched_actions=tuple(unmatched),
    )
    if result.bound_applies and not result.within_bound:
        logger.warning(f"KL 합 {total:.6g}이 상한 {bound:.6g}을 넘습니다")
    return result


def hard_run_diagnostics(
    trajectories: Sequence[Trajectory],
    instance: HardInstance,
    total_episodes: int,
    alternative: HardInstance | None = None,
) -> HardDiagnostics:
    """정지 시점 τ_k, 사건 D_k, 방문 합, (대안이 있으면) 에피소드 1..τ_k−1 의 단계별 KL.

    D_k = [Σ_{n<τ_k} Σ_{j≤s−1} z_j(A₂ⁿ) ≤ τ_k·s/2], z 는 고정 전의 S 패턴입니다.
    """
    tau = stopping_time(trajectories, instance, total_episodes)
    trace = x_u_visitation_trace(trajectories, instance, upto=tau - 1)
    leading = instance.a2_patterns[:, : instance.s - 1].sum(axis=1)
    visitation_sum = float((trace @ leading).sum())
    threshold = tau * instance.s / 2.0
    kl = None
    if alternative is not None:
        kl = stepwise_kl(instance, alternative, trace)
    return HardDiagnostics(
        tau=tau,
        event_d=visitation_sum <= threshold,
        visitation_sum=visitation_sum,
        threshold=threshold,
        kl=kl,
    )


def null_instance_agreement(
    null_instance: HardInstance, instance: HardInstance
) -> tuple[tuple[int, int], ...]:
    """두 인스턴스 전이 테이블이 다른 (상태, 행동) 쌍 목록.

    M₀ 와 M_k 는 (x₀, a_k⁰) 한 쌍에서만 달라야 합니다.
    """
    if null_instance.mdp.actions_per_state != instance.mdp.actions_per_state:
        raise InvalidInstanceError("두 인스턴스의 행동 메뉴 크기가 다릅니다")
    gaps = np.abs(null_instance.mdp.transition_table - instance.mdp.transition_table)
    differing = np.flatnonzero(gaps.max(axis=1) > TABLE_TOLERANCE)
    mdp = instance.mdp
    return tuple(
        (int(mdp.pair_states[pair]), int(mdp.pair_actions[pair])) for pair in differing
    )
