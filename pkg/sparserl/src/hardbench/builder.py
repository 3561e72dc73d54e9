"""어려운 인스턴스 M_k, 귀무 인스턴스 M₀, 대안 M̃_k 생성기."""

import numpy as np

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.hardbench.feature_sets import a2_menu, a3_menu, is_s_prime_member
from sparserl.src.hardbench.models import (
    STATE_LABELS,
    XB,
    XG,
    XI,
    XU,
    HardInstance,
    RewardConvention,
    bad_coordinate,
    constant_coordinate,
    feature_dimension,
    goal_coordinate,
    start_coordinate,
)
from sparserl.src.linmdp.feature_map import FeatureMap
from sparserl.src.linmdp.models import SparseLinearMDP
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

A2_STREAM, A3_STREAM, CANDIDATE_STREAM = range(3)


def menu_stream(seed: int, stream: int) -> np.random.Generator:
    """시드와 용도별 키로 독립 난수 스트림을 만듭니다 (k와 무관)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def theta_vector(d: int, s: int, epsilon: float) -> np.ndarray:
    """θ = (ε,…,ε, 0,…,0, 1/2), 앞의 ε 는 s−1 개."""
    theta = np.zeros(d)
    theta[: s - 1] = epsilon
    theta[d - 1] = 0.5
    return theta


def _check_parameters(
    d: int, s: int, k: int, epsilon: float, action_cap: int, horizon: int
) -> None:
    if not 2 <= s <= d:
        raise InvalidInstanceError(f"2 ≤ s ≤ d 이어야 합니다: d={d}, s={s}", "s")
    if not 0 <= k <= d:
        raise InvalidInstanceError(f"k는 0..{d} 범위여야 합니다: {k}", "k")
    if not 0.0 < epsilon <= 1.0 / (2 * (s - 1)):
        raise InvalidInstanceError(
            f"ε는 (0, 1/(2(s−1))] 범위여야 합니다: {epsilon} "
            "(벗어나면 x_i 전이 확률이 음수가 됩니다)",
            "epsilon",
        )
    if action_cap < 2:
        raise InvalidInstanceError(f"action_cap은 2 이상이어야 합니다: {action_cap}", "cap")
    if horizon < 2:
        raise InvalidInstanceError(f"horizon은 2 이상이어야 합니다: {horizon}", "H")


def _check_alternative(s: int, epsilon: float, z_tilde: np.ndarray) -> None:
    if not is_s_prime_member(z_tilde, s):
        raise InvalidInstanceError(
            "z̃ 는 S′ 원소여야 합니다 (좌표 1..s−1, d 는 0, ℓ₁ 노름 s−1)", "z_tilde"
        )
    if 3 * (s - 1) * epsilon > 0.5:
        raise InvalidInstanceError(
            f"대안 θ̃ 에서 x_i 전이 확률이 [0,1]을 벗어납니다: ε={epsilon}", "epsilon"
        )


def _assemble(
    d: int,
    s: int,
    k: int,
    epsilon: float,
    action_cap: int,
    seed: int,
    horizon: int,
    reward_convention: RewardConvention,
    z_tilde: np.ndarray | None,
    alternative: bool,
) -> HardInstance:
    theta = theta_vector(d, s, epsilon)
    parameters = [theta]
    if z_tilde is not None:
        parameters.append(theta + 2.0 * epsilon * z_tilde)
    transition_parameter = parameters[-1] if alternative else theta

    a2 = a2_menu(d, s, action_cap, menu_stream(seed, A2_STREAM), z_tilde)
    a3 = a3_menu(d, action_cap, menu_stream(seed, A3_STREAM))

    # P(x_g|x_u,a) < 0 인 행동은 파라미터 지지 집합(마지막 좌표 제외)의 특징을 0으로
    clamp_coordinates = sorted(
        {int(j) for p in parameters for j in np.flatnonzero(p[: d - 1])}
    )
    clamped = np.zeros(len(a2), dtype=bool)
    for p in parameters:
        clamped |= a2 @ p < 0.0
    u_block = a2.astype(np.float64)
    u_block[np.ix_(clamped, clamp_coordinates)] = 0.0

    dim = feature_dimension(d)
    const = constant_coordinate(d)
    start_rows = np.zeros((d, dim))
    for action in range(d):
        start_rows[action, start_coordinate(d, action)] = 1.0
        start_rows[action, const] = 1.0
    informative_rows = np.zeros((len(a3), dim))
    informative_rows[:, :d] = a3
    informative_rows[:, const] = 1.0
    uninformative_rows = np.zeros((len(a2), dim))
    uninformative_rows[:, :d] = u_block
    uninformative_rows[:, const] = 1.0
    goal_row = np.zeros((1, dim))
    goal_row[0, goal_coordinate(d)] = 1.0
    bad_row = np.zeros((1, dim))
    bad_row[0, bad_coordinate(d)] = 1.0
    table = np.vstack(
        [start_rows, informative_rows, uninformative_rows, goal_row, bad_row]
    )

    start_block = slice(start_coordinate(d, 0), start_coordinate(d, d))
    factors = np.zeros((dim, len(STATE_LABELS)))
    if k >= 1:
        factors[start_coordinate(d, k - 1), XI] = 1.0
    factors[start_block, XU] = 1.0
    if k >= 1:
        factors[start_coordinate(d, k - 1), XU] = 0.0
    factors[:d, XG] = transition_parameter
    factors[goal_coordinate(d), XG] = 1.0
    factors[:d, XB] = -transition_parameter
    factors[bad_coordinate(d), XB] = 1.0
    factors[start_block, XB] = -1.0
    factors[const, XB] = 1.0

    active_set = tuple(int(j) for j in np.flatnonzero(np.any(factors != 0.0, axis=1)))
    actions_per_state = (d, len(a3), len(a2), 1, 1)
    transitions = table[:, list(active_set)] @ factors[list(active_set)]
    if reward_convention == RewardConvention.ARRIVAL:
        rewards = transitions[:, XG].copy()
    else:
        rewards = np.zeros(table.shape[0])
        rewards[-2] = 1.0
    xi0 = np.zeros(len(STATE_LABELS))
    xi0[0] = 1.0

    mdp = SparseLinearMDP(
        feature_map=FeatureMap(table),
        factors=factors[list(active_set)],
        active_set=active_set,
        sparsity=len(active_set),
        horizon=horizon,
        rewards=rewards,
        initial_distribution=xi0,
        actions_per_state=actions_per_state,
        state_labels=STATE_LABELS,
        transitions=transitions,
    )
    logger.debug(
        f"어려운 인스턴스 생성: d={d}, s={s}, k={k}, ε={epsilon}, |A₂|={len(a2)}, "
        f"|A₃|={len(a3)}, 클램프={int(clamped.sum())}, 대안={alternative}"
    )
    return HardInstance(
        mdp=mdp,
        d=d,
        s=s,
        k=k,
        epsilon=epsilon,
        action_cap=action_cap,
        seed=seed,
        theta=theta,
        a2_patterns=a2,
        a3_patterns=a3,
        clamped=clamped,
        reward_convention=reward_convention,
        z_tilde=None if z_tilde is None else np.array(z_tilde, dtype=np.int64),
        is_alternative=alternative,
    )


def build_hard_instance(
    d: int,
    s: int,
    k: int,
    epsilon: float,
    action_cap: int,
    seed: int,
    horizon: int = 3,
    reward_convention: RewardConvention = RewardConvention.ARRIVAL,
    z_tilde: np.ndarray | None = None,
) -> HardInstance:
    """어려운 인스턴스 M_k (k = 0이면 모든 x₀ 행동이 x_u 로 가는 M₀)를 만듭니다.

    Args:
        d: 주변 차원 (특징 차원은 2d+3)
        s: 희소도 파라미터
        k: 정보 상태로 가는 x₀ 행동 번호 (1..d) 또는 0
        epsilon: ε ∈ (0, 1/(2(s−1))]
        action_cap: A₂/A₃ 메뉴 최대 크기
        seed: 메뉴 샘플링 시드
        horizon: 에피소드 길이 H
        reward_convention: 보상 규약
        z_tilde: 대안 방향 (주면 메뉴에 포함하고 클램프를 θ̃ 기준까지 맞춤)

    Returns:
        HardInstance: θ 로 전이를 정의한 인스턴스

    Raises:
        InvalidInstanceError: 파라미터 범위를 벗어난 경우
    """
    _check_parameters(d, s, k, epsilon, action_cap, horizon)
    if z_tilde is not None:
        z_tilde = np.asarray(z_tilde, dtype=np.int64)
        _check_alternative(s, epsilon, z_tilde)
    return _assemble(
        d, s, k, epsilon, action_cap, seed, horizon, reward_convention, z_tilde, False
    )


def attach_alternative(instance: HardInstance, z_tilde: np.ndarray) -> HardInstance:
    """z̃ 를 연결한 M_k (θ 전이 유지, 메뉴와 클램프는 대안과 동일)."""
    return build_hard_instance(
        instance.d,
        instance.s,
        instance.k,
        instance.epsilon,
        instance.action_cap,
        instance.seed,
        instance.horizon,
        instance.reward_convention,
        z_tilde=z_tilde,
    )


def build_alternative_instance(
    instance: HardInstance, z_tilde: np.ndarray
) -> HardInstance:
    """θ 를 θ̃ = θ + 2ε·z̃ 로 바꾼 대안 M̃_k 를 만듭니다.

    나머지 구성은 attach_alternative(instance, z̃) 와 같습니다. instance 가 z̃ 없이
    만들어졌다면 x_u 메뉴의 마지막 샘플 행동 하나가 z̃ 로 바뀔 수 있습니다.

    Raises:
        InvalidInstanceError: z̃ ∉ S′ 이거나 instance 가 이미 대안인 경우
    """
    if instance.is_alternative:
        raise InvalidInstanceError("대안 인스턴스로부터 다시 대안을 만들 수 없습니다")
    z_tilde = np.asarray(z_tilde, dtype=np.int64)
    if z_tilde.shape != (instance.d,):
        raise InvalidInstanceError(f"z̃ 길이는 d={instance.d}여야 합니다", "z_tilde")
    _check_alternative(instance.s, instance.epsilon, z_tilde)
    return _assemble(
        instance.d,
        instance.s,
        instance.k,
        instance.epsilon,
        instance.action_cap,
        instance.seed,
        instance.horizon,
        instance.reward_convention,
        z_tilde,
        True,
    )


def uninformative_optimal_value(instance: HardInstance) -> float:
    """x_u 경로만 쓸 때의 최적 가치 닫힌 형태.

    arrival 규약은 (H−1)·q, state 규약은 (H−2)·q 이며
    q 는 M_k 에서 (s−1)ε, 대안에서는 z̃ 행동이 주는 2(s−1)ε 입니다.
    """
    arrival = instance.reward_convention == RewardConvention.ARRIVAL
    steps = instance.horizon - (1 if arrival else 2)
    per_step = (instance.s - 1) * instance.epsilon
    if instance.is_alternative:
        per_step *= 2.0
    return steps * per_step
