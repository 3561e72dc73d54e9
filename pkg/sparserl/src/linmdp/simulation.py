"""에피소드 시뮬레이션 모듈.

모든 샘플링은 호출자가 넘긴 난수 스트림만 사용합니다.
"""

import numpy as np

from sparserl.src.linmdp.models import (
    Phase,
    Policy,
    SparseLinearMDP,
    Trajectory,
    Transition,
)


def _draw(cdf: np.ndarray, rng: np.random.Generator) -> int:
    index = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(index, cdf.size - 1)


def sample_initial_states(
    mdp: SparseLinearMDP, rng: np.random.Generator, size: int
) -> np.ndarray:
    """ξ₀에서 초기 상태 size개를 한 번에 뽑습니다."""
    cdf = mdp.initial_cdf
    draws = rng.random(size) * cdf[-1]
    return np.minimum(np.searchsorted(cdf, draws, side="right"), mdp.n_states - 1)


def sample_episode(
    mdp: SparseLinearMDP,
    policy: Policy,
    rng: np.random.Generator,
    episode: int = 0,
    phase: Phase = Phase.BASELINE,
    initial_state: int | None = None,
) -> Trajectory:
    """정책을 따라 길이 H의 에피소드 하나를 생성합니다.

    Args:
        mdp: 환경
        policy: 행동 정책
        rng: 난수 스트림
        episode: 에피소드 번호
        phase: 단계 태그
        initial_state: 이미 뽑은 초기 상태 (없으면 ξ₀에서 추출)

    Returns:
        Trajectory: H개의 전이

    Raises:
        PolicyCoverageError: 방문한 상태에 정책 행이 없는 경우
    """
    state = _draw(mdp.initial_cdf, rng) if initial_state is None else initial_state
    steps = []
    for step in range(mdp.horizon):
        action = policy.act(mdp, step, state, rng)
        pair = mdp.pair_index(state, action)
        next_state = _draw(mdp.transition_cdf[pair], rng)
        steps.append(
            Transition(
                state=state,
                action=action,
                reward=float(mdp.rewards[pair]),
                next_state=next_state,
            )
        )
        state = next_state
    return Trajectory(episode=episode, steps=tuple(steps), phase=phase)
