"""탐색 후 확정(explore-then-commit) Online Lasso-FQI 에이전트."""

import numpy as np

from sparserl.src.agents.models import ExplorationBudget, RunRecord
from sparserl.src.dp.bellman import optimal_values, policy_values
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.fqi.lasso_fqi import Regressor, greedy_policy, lasso_fqi
from sparserl.src.fqi.models import MDPView
from sparserl.src.fqi.partition import partition_folds
from sparserl.src.linmdp.models import Phase, SparseLinearMDP, StationaryPolicy
from sparserl.src.linmdp.simulation import sample_episode, sample_initial_states
from sparserl.src.sparsereg.models import LassoConfig
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)


def run_explore_then_commit(
    mdp: SparseLinearMDP,
    exploratory_policy: StationaryPolicy,
    total_episodes: int,
    budget: ExplorationBudget,
    cfg: LassoConfig,
    seed: int,
    rng: np.random.Generator | None = None,
    regressor: Regressor | None = None,
    agent: str = "online-lasso-fqi",
    config_hash: str = "",
    keep_trajectories: bool = False,
) -> RunRecord:
    """탐색 N₁ 에피소드 → FQI 학습 → 고정된 탐욕 정책으로 나머지 N−N₁ 에피소드.

    regressor를 바꾸면 같은 템플릿으로 릿지 기준선을 실행합니다.
    """
    if budget.total_episodes != total_episodes:
        raise ExperimentConfigError(
            f"예산의 N={budget.total_episodes}이 실행 N={total_episodes}과 다릅니다"
        )
    if budget.horizon != mdp.horizon:
        raise ExperimentConfigError(
            f"예산의 H={budget.horizon}이 MDP horizon {mdp.horizon}과 다릅니다"
        )
    rng = rng if rng is not None else np.random.default_rng(seed)
    n_explore = budget.exploration_episodes
    optimal = optimal_values(mdp).initial_values

    explore_gap = optimal - policy_values(mdp, exploratory_policy).initial_values
    explored = [
        sample_episode(mdp, exploratory_policy, rng, episode=index, phase=Phase.EXPLORE)
        for index in range(n_explore)
    ]

    view = MDPView.from_mdp(mdp)
    weights = lasso_fqi(
        partition_folds(explored, mdp.horizon),
        view,
        cfg,
        total_episodes=total_episodes,
        regressor=regressor,
    )
    greedy = greedy_policy(weights, view)
    exploit_gap = optimal - policy_values(mdp, greedy).initial_values

    n_exploit = total_episodes - n_explore
    exploited = []
    if keep_trajectories:
        exploited = [
            sample_episode(
                mdp, greedy, rng, episode=n_explore + index, phase=Phase.EXPLOIT
            )
            for index in range(n_exploit)
        ]
        exploit_states = np.array([t.initial_state for t in exploited], dtype=np.int64)
    else:
        exploit_states = sample_initial_states(mdp, rng, n_exploit)

    explore_states = np.array([t.initial_state for t in explored], dtype=np.int64)
    initial_states = np.concatenate([explore_states, exploit_states])
    regret = np.concatenate([explore_gap[explore_states], exploit_gap[exploit_states]])

    flags = []
    if not weights.all_converged:
        flags.append("lasso-not-converged")
    if budget.capped:
        flags.append("budget-capped")
    logger.debug(
        f"{agent} 실행 완료: N={total_episodes}, N₁={n_explore}, "
        f"총 후회={float(regret.sum()):.6g}"
    )
    return RunRecord(
        agent=agent,
        initial_states=initial_states,
        phases=(Phase.EXPLORE,) * n_explore + (Phase.EXPLOIT,) * n_exploit,
        episode_regret=regret,
        exploration_episodes=n_explore,
        horizon=mdp.horizon,
        seed=seed,
        config_hash=config_hash,
        weights=weights,
        quality_flags=tuple(flags),
        trajectories=tuple(explored + exploited) if keep_trajectories else (),
    )


def run_online_lasso_fqi(
    mdp: SparseLinearMDP,
    exploratory_policy: StationaryPolicy,
    total_episodes: int,
    budget: ExplorationBudget,
    cfg: LassoConfig,
    seed: int,
    rng: np.random.Generator | None = None,
    config_hash: str = "",
    keep_trajectories: bool = False,
) -> RunRecord:
    """Online Lasso-FQI 한 번을 실행합니다.

    Args:
        mdp: 환경 (에이전트는 보상, 특징, 메뉴만 사용)
        exploratory_policy: 오라클 탐색 정책 π_e
        total_episodes: N
        budget: choose_exploration_length 결과
        cfg: Lasso 설정
        seed: 매니페스트에 기록할 시드 (rng가 없으면 난수 스트림도 이것으로 생성)
        rng: 외부에서 만든 난수 스트림
        config_hash: 실험 설정 해시
        keep_trajectories: True면 모든 에피소드 궤적을 기록에 보관

    Returns:
        RunRecord: 에피소드별 정확한 후회와 학습된 가중치
    """
    return run_explore_then_commit(
        mdp,
        exploratory_policy,
        total_episodes,
        budget,
        cfg,
        seed,
        rng=rng,
        config_hash=config_hash,
        keep_trajectories=keep_trajectories,
    )
