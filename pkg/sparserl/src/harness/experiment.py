"""시드 고정 복제 실행 스윕과 후회 곡선 집계."""

import concurrent.futures
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from sparserl.__version__ import __version__
from sparserl.src.agents.baselines import run_baseline
from sparserl.src.agents.budget import choose_exploration_length
from sparserl.src.agents.models import BudgetMode, ExplorationBudget, RunRecord
from sparserl.src.agents.online_lasso_fqi import run_online_lasso_fqi
from sparserl.src.dp.occupancy import expected_covariance
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.hardbench.builder import build_hard_instance
from sparserl.src.hardbench.models import HardInstance
from sparserl.src.hardbench.policies import (
    exploratory_block_sigma_min,
    exploratory_policy_for,
)
from sparserl.src.harness.models import (
    AgentKind,
    ExperimentConfig,
    ExperimentResult,
    InstanceKind,
    InstanceSpec,
    RegretCurve,
)
from sparserl.src.harness.persistence import (
    write_curve_csv,
    write_manifest,
    write_summary_csv,
)
from sparserl.src.harness.streams import replicate_seed, replicate_stream
from sparserl.src.linmdp.generators import make_random_sparse_mdp
from sparserl.src.linmdp.models import SparseLinearMDP, StationaryPolicy
from sparserl.src.linmdp.serialization import load_instance
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

SIGMA_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class PreparedInstance:
    """실험 환경과 그에 맞는 오라클 탐색 정책."""

    mdp: SparseLinearMDP
    exploratory_policy: StationaryPolicy
    hard: HardInstance | None = None


def prepare_instance(spec: InstanceSpec) -> PreparedInstance:
    """설정으로부터 환경과 탐색 정책을 만듭니다.

    무작위/파일 인스턴스는 균등 정책, 어려운 인스턴스는 a_k⁰ 탐색 정책을 씁니다.
    """
    if spec.kind == InstanceKind.RANDOM_SPARSE:
        mdp = make_random_sparse_mdp(
            spec.num_states,
            spec.num_actions,
            spec.d,
            spec.s,
            spec.horizon,
            spec.seed,
            nuisance_scale=spec.nuisance_scale,
        )
        return PreparedInstance(mdp, StationaryPolicy.uniform(mdp))
    if spec.kind == InstanceKind.HARD:
        hard = build_hard_instance(
            spec.d,
            spec.s,
            spec.k,
            spec.hard_epsilon,
            spec.action_cap,
            spec.seed,
            horizon=spec.horizon,
            reward_convention=spec.reward_convention,
        )
        policy = (
            exploratory_policy_for(hard)
            if hard.k >= 1
            else StationaryPolicy.uniform(hard.mdp)
        )
        return PreparedInstance(hard.mdp, policy, hard)
    assert spec.path is not None
    mdp = load_instance(spec.path)
    return PreparedInstance(mdp, StationaryPolicy.uniform(mdp))


def resolve_c_min(config: ExperimentConfig, prepared: PreparedInstance) -> float:
    """예산 공식의 C_min. 설정에 없으면 탐색 정책의 σ_min 으로 계산합니다."""
    if config.budget.c_min is not None:
        return config.budget.c_min
    if config.budget.mode != BudgetMode.ORACLE:
        return 1.0
    if prepared.hard is not None and prepared.hard.k >= 1:
        # 전체 σ_min 은 x₀ 행동 좌표 때문에 η/(dH) 이하
        sigma = exploratory_block_sigma_min(prepared.hard, prepared.exploratory_policy)
    else:
        sigma = expected_covariance(prepared.mdp, prepared.exploratory_policy).sigma_min
    if sigma <= SIGMA_FLOOR:
        raise ExperimentConfigError(
            f"탐색 정책의 σ_min={sigma:.3g}이 0에 가까워 oracle 예산을 계산할 수 없습니다. "
            "budget.c_min을 지정하세요"
        )
    return sigma


def _budget_for(
    config: ExperimentConfig, mdp: SparseLinearMDP, total_episodes: int, c_min: float
) -> ExplorationBudget:
    return choose_exploration_length(
        total_episodes,
        mdp.horizon,
        mdp.d,
        mdp.sparsity,
        c_min,
        config.budget.delta,
        config.budget.mode,
        fixed_episodes=config.budget.fixed_episodes,
        scale=config.budget.scale,
    )


def run_replicate(
    config: ExperimentConfig,
    prepared: PreparedInstance,
    total_episodes: int,
    replicate: int,
    c_min: float,
    config_hash: str = "",
) -> RunRecord:
    """(N, replicate) 한 번을 독립 스트림으로 실행합니다."""
    rng = replicate_stream(config.master_seed, total_episodes, replicate)
    seed = replicate_seed(config.master_seed, total_episodes, replicate)
    kind = config.agent.kind
    needs_budget = kind in (AgentKind.LASSO_FQI, AgentKind.RIDGE_FQI_ETC)
    budget = None
    if needs_budget:
        budget = _budget_for(config, prepared.mdp, total_episodes, c_min)
    if kind == AgentKind.LASSO_FQI:
        assert budget is not None
        return run_online_lasso_fqi(
            prepared.mdp,
            prepared.exploratory_policy,
            total_episodes,
            budget,
            config.lasso,
            seed,
            rng=rng,
            config_hash=config_hash,
        )
    baseline = kind.baseline
    assert baseline is not None
    return run_baseline(
        prepared.mdp,
        baseline,
        total_episodes,
        seed,
        exploratory_policy=prepared.exploratory_policy,
        budget=budget,
        ridge_alpha=config.agent.ridge_alpha,
        rng=rng,
        config_hash=config_hash,
    )


def _prepare_output_dir(output_dir: Path) -> Path:
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        (output_dir / "runs").mkdir(exist_ok=True)
    except OSError as e:
        raise ExperimentConfigError(
            "출력 디렉토리를 만들 수 없습니다", path=output_dir, cause=e
        ) from e
    return output_dir


def run_experiment(
    config: ExperimentConfig, output_dir: Path | None = None
) -> ExperimentResult:
    """격자 N × 복제 실행을 스레드 풀에서 돌리고 곡선을 집계해 저장합니다.

    복제 실행마다 (master_seed, N, replicate) 스트림을 쓰고, 실행별 파일은 각 작업이
    따로 쓰며, curve.csv / summary.csv / manifest.json 은 집계 단계에서 한 번에 씁니다.

    Args:
        config: 실험 설정
        output_dir: 출력 디렉토리 (없으면 config.output_dir, 둘 다 없으면 저장 안 함)

    Returns:
        ExperimentResult: 후회 곡선과 산출물 경로

    Raises:
        ExperimentConfigError: 출력 디렉토리를 쓸 수 없거나 인스턴스가 잘못된 경우
    """
    output_dir = output_dir or config.output_dir
    if output_dir is not None:
        _prepare_output_dir(output_dir)
    config_hash = config.config_hash()
    prepared = prepare_instance(config.instance)
    c_min = resolve_c_min(config, prepared)
    logger.info(
        f"실험 시작: agent={config.agent.kind.value}, grid={config.grid}, "
        f"replicates={config.replicates}, hash={config_hash[:12]}"
    )

    def task(total_episodes: int, replicate: int) -> tuple[RunRecord, Path | None]:
        record = run_replicate(
            config, prepared, total_episodes, replicate, c_min, config_hash
        )
        run_path = None
        if output_dir is not None and config.keep_run_files:
            run_path = output_dir / "runs" / f"N{total_episodes}_rep{replicate}.csv"
            record.to_csv(run_path)
        return record, run_path

    results: dict[tuple[int, int], tuple[RunRecord, Path | None]] = {}
    pool = concurrent.futures.ThreadPoolExecutor(max_workers=config.max_workers)
    with pool as executor:
        future_to_key = {
            executor.submit(task, total_episodes, replicate): (
                total_episodes,
                replicate,
            )
            for total_episodes in config.grid
            for replicate in range(config.replicates)
        }
        for future in concurrent.futures.as_completed(future_to_key):
            results[future_to_key[future]] = future.result()

    values = np.array(
        [
            [results[(n, r)][0].total_regret for r in range(config.replicates)]
            for n in config.grid
        ]
    )
    curve = RegretCurve(grid=tuple(config.grid), values=values)
    flags = sorted(
        {flag for record, _ in results.values() for flag in record.quality_flags}
    )
    run_paths = tuple(
        path
        for n in config.grid
        for r in range(config.replicates)
        if (path := results[(n, r)][1]) is not None
    )

    if output_dir is None:
        return ExperimentResult(
            curve=curve, config_hash=config_hash, quality_flags=tuple(flags)
        )

    curve_path = write_curve_csv(curve, output_dir / "curve.csv")
    summary_path = write_summary_csv(curve, output_dir / "summary.csv")
    manifest = {
        "version": __version__,
        "config_hash": config_hash,
        "config": config.hashed_fields(),
        "grid": list(config.grid),
        "replicates": config.replicates,
        "c_min": c_min,
        "quality_flags": flags,
        "exploration_episodes": {
            str(n): results[(n, 0)][0].exploration_episodes for n in config.grid
        },
    }
    manifest_path = write_manifest(manifest, output_dir / "manifest.json")
    logger.info(f"실험 결과 저장: {output_dir}")
    return ExperimentResult(
        curve=curve,
        config_hash=config_hash,
        output_dir=output_dir,
        curve_path=curve_path,
        summary_path=summary_path,
        manifest_path=manifest_path,
        run_paths=run_paths,
        quality_flags=tuple(flags),
    )
