"""비교 기준 에이전트: 균등 무작위, 릿지 ETC, 최적 정책."""

import numpy as np

from sparserl.src.agents.models import BaselineKind, ExplorationBudget, RunRecord
from sparserl.src.agents.online_lasso_fqi import run_explore_then_commit
from sparserl.src.dp.bellman import optimal_values, policy_values
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.fqi.lasso_fqi import RidgeRegressor
from sparserl.src.linmdp.models import (
    NonstationaryPolicy,
    Phase,
    Policy,
    SparseLinearMDP,
    StationaryPolicy,
)
from sparserl.src.linmdp.simulation import sample_episode, sample_initial_states
from sparserl.src.sparsereg.models import LassoConfig

DEFAULT_RIDGE_ALPHA = 1.0


def _run_fixed_policy(
    mdp: SparseLinearMDP,
    policy: Policy,
    kind: BaselineKind,
    total_episodes: int,
    seed: int,
    rng: np.random.Generator,
    config_hash: str,
    keep_trajectories: bool,
) -> RunRecord:
    optimal = optimal_values(mdp)
    gap = optimal.initial_values - policy_values(mdp, policy).initial_values
    trajectories = ()
    if keep_trajectories:
        trajectories = tuple(
            sample_episode(mdp, policy, rng, episode=index, phase=Phase.BASELINE)
            for index in range(total_episodes)
        )
        states = np.array([t.initial_state for t in trajectories], dtype=np.int64)
    else:
        states = sample_initial_states(mdp, rng, total_episodes)
    return RunRecord(
        agent=kind.value,
        initial_states=states,
        phases=(Phase.BASELINE,) * total_episodes,
        episode_regret=gap[states],
        exploration_episodes=0,
        horizon=mdp.horizon,
        seed=seed,
        config_hash=config_hash,
        trajectories=trajectories,
    )


def run_baseline(
    mdp: SparseLinearMDP,
    kind: BaselineKind,
    total_episodes: int,
    seed: int,
    exploratory_policy: StationaryPolicy | None = None,
    budget: ExplorationBudget | None = None,
    ridge_alpha: float = DEFAULT_RIDGE_ALPHA,
    rng: np.random.Generator | None = None,
    config_hash: str = "",
    keep_trajectories: bool = False,
) -> RunRecord:
    """기준 에이전트를 실행하고 Online Lasso-FQI와 같은 형식의 기록을 반환합니다.

    Args:
        mdp: 환경
        kind: uniform-random / ridge-fqi-etc / oracle-optimal
        total_episodes: N
        seed: 시드
        exploratory_policy: ridge-fqi-etc 탐색 정책
        budget: ridge-fqi-etc 탐색 예산
        ridge_alpha: 릿지 ℓ₂ 페널티
        rng: 외부 난수 스트림
        config_hash: 실험 설정 해시
        keep_trajectories: True면 궤적을 보관

    Returns:
        RunRecord: 에피소드별 정확한 후회
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    if kind == BaselineKind.UNIFORM_RANDOM:
        policy: Policy = StationaryPolicy.uniform(mdp)
    elif kind == BaselineKind.ORACLE_OPTIMAL:
        policy = NonstationaryPolicy(optimal_values(mdp).greedy_actions)
    else:
        if exploratory_policy is None or budget is None:
            raise ExperimentConfigError("ridge-fqi-etc에는 탐색 정책과 예산이 필요합니다")
        return run_explore_then_commit(
            mdp,
            exploratory_policy,
            total_episodes,
            budget,
            LassoConfig(),
            seed,
            rng=rng,
            regressor=RidgeRegressor(ridge_alpha),
            agent=kind.value,
            config_hash=config_hash,
            keep_trajectories=keep_trajectories,
        )
    return _run_fixed_policy(
        mdp, policy, kind, total_episodes, seed, rng, config_hash, keep_trajectories
    )
