"""
CLI 인터페이스를 제공하는 모듈입니다.
"""

import functools
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
import numpy as np

from sparserl.__version__ import __version__
from sparserl.src.agents.baselines import run_baseline
from sparserl.src.agents.models import BaselineKind
from sparserl.src.config import (
    SEED_ENV_VAR,
    get_default_output_dir,
    set_default_debug_mode,
    set_default_output_dir,
)
from sparserl.src.dp.bellman import optimal_values
from sparserl.src.dp.occupancy import expected_covariance
from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.exceptions.sparse_rl_error import SparseRLError
from sparserl.src.hardbench.builder import (
    build_alternative_instance,
    build_hard_instance,
    uninformative_optimal_value,
)
from sparserl.src.hardbench.diagnostics import (
    hard_run_diagnostics,
    select_z_tilde,
    stopping_time,
    x_u_visitation_weights,
)
from sparserl.src.hardbench.models import X0, RewardConvention
from sparserl.src.hardbench.policies import (
    exploratory_block_sigma_min,
    exploratory_policy_for,
)
from sparserl.src.harness.experiment import run_experiment
from sparserl.src.harness.models import ExperimentConfig
from sparserl.src.harness.persistence import read_curve_csv
from sparserl.src.harness.slope import fit_regret_slope
from sparserl.src.linmdp.serialization import dump_instance, load_instance
from sparserl.src.linmdp.validation import validate_mdp
from sparserl.src.sparsereg.lasso import lasso_fit
from sparserl.src.sparsereg.models import LassoConfig, RegressionDataset
from sparserl.src.sparsereg.restricted_eigen import restricted_eigenvalue_estimate
from sparserl.src.utils.base_console import console
from sparserl.src.utils.logging import LOG_LEVEL_INFO, run_log, setup_logging

F = TypeVar("F", bound=Callable[..., Any])

DEFAULT_RE_BUDGET = 2000
DEFAULT_DIAGNOSE_EPISODES = 64


def _real(value: float) -> str:
    return f"{value:.17g}"


def domain_errors(func: F) -> F:
    """도메인 예외를 오류 메시지와 종료 코드 1로 바꿉니다."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:  # noqa: ANN401
        try:
            return func(*args, **kwargs)
        except SparseRLError as e:
            console.error(f"오류: {e}", exception=e)
            sys.exit(1)

    return wrapper  # type: ignore[return-value]


@click.group(invoke_without_command=True)
@click.option("--version", is_flag=True, help="버전 정보를 출력합니다.")
@click.option(
    "--seed",
    type=int,
    envvar=SEED_ENV_VAR,
    default=None,
    help=f"마스터 시드 (설정 파일 값을 덮어씀, 환경변수 {SEED_ENV_VAR})",
)
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="결과 출력 디렉토리",
)
@click.option("--quiet", is_flag=True, help="결과 외 출력을 숨깁니다.")
@click.pass_context
def cli(
    ctx: click.Context,
    version: bool,
    seed: int | None,
    out: Path | None,
    quiet: bool,
) -> None:
    """희소 선형 MDP 실험 도구 (Online Lasso-FQI, 하한 인스턴스 진단)"""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed
    ctx.obj["out"] = out
    console.set_quiet(quiet)

    if version:
        click.echo(f"sparserl {__version__}")
        return

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command()
@click.argument(
    "instance_file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@domain_errors
def validate(instance_file: Path) -> None:
    """인스턴스 파일 검증 (validate_mdp)"""
    report = validate_mdp(load_instance(instance_file))
    if report.is_valid:
        console.result("OK")
        return
    for line in report.lines():
        console.result(line)
    console.error(f"위반 {len(report.violations)}건이 발견되었습니다.")
    sys.exit(1)


@cli.command()
@click.option(
    "--config",
    "config_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="실험 설정 파일 (YAML/JSON)",
)
@click.pass_context
@domain_errors
def simulate(ctx: click.Context, config_file: Path) -> None:
    """실험 설정에 따라 복제 실행 스윕을 돌리고 후회 곡선을 저장"""
    config = ExperimentConfig.from_file(config_file)
    if ctx.obj.get("seed") is not None:
        config = config.model_copy(update={"master_seed": ctx.obj["seed"]})
    output_dir = ctx.obj.get("out") or config.output_dir or get_default_output_dir()

    with run_log(output_dir), console.status("실험 실행 중..."):
        result = run_experiment(config, output_dir=output_dir)

    console.success(f"실험 완료: {output_dir}")
    console.result(f"config_hash\t{result.config_hash}")
    console.result("N\tmean\tstderr")
    for row, total_episodes in enumerate(result.curve.grid):
        console.result(
            f"{total_episodes}\t{_real(result.curve.means[row])}"
            f"\t{_real(result.curve.stderrs[row])}"
        )
    for flag in result.quality_flags:
        console.warning(f"품질 플래그: {flag}")


@cli.command()
@click.option("--d", "d", required=True, type=int, help="주변 차원 d")
@click.option("--s", "s", required=True, type=int, help="희소도 s")
@click.option("--k", "k", required=True, type=int, help="정보 행동 번호 (0이면 M₀)")
@click.option("--epsilon", type=float, default=None, help="ε (기본값 1/(8s))")
@click.option("--cap", type=int, default=64, show_default=True, help="메뉴 최대 크기")
@click.option("--seed", "instance_seed", type=int, default=None, help="메뉴 샘플링 시드")
@click.option("--horizon", type=int, default=3, show_default=True, help="에피소드 길이 H")
@click.option(
    "--reward",
    type=click.Choice([c.value for c in RewardConvention]),
    default=RewardConvention.ARRIVAL.value,
    show_default=True,
    help="보상 규약",
)
@click.option("--diagnose", is_flag=True, help="균등 정책으로 τ_k, D_k, KL 진단 실행")
@click.option(
    "--episodes",
    type=int,
    default=DEFAULT_DIAGNOSE_EPISODES,
    show_default=True,
    help="진단 에피소드 수 N",
)
@click.pass_context
@domain_errors
def hardbench(
    ctx: click.Context,
    d: int,
    s: int,
    k: int,
    epsilon: float | None,
    cap: int,
    instance_seed: int | None,
    horizon: int,
    reward: str,
    diagnose: bool,
    episodes: int,
) -> None:
    """하한 어려운 인스턴스 생성 (선택적으로 τ/KL 진단)"""
    seed = instance_seed if instance_seed is not None else (ctx.obj.get("seed") or 0)
    epsilon = epsilon if epsilon is not None else 1.0 / (8 * s)
    instance = build_hard_instance(
        d,
        s,
        k,
        epsilon,
        cap,
        seed,
        horizon=horizon,
        reward_convention=RewardConvention.from_string(reward),
    )
    mdp = instance.mdp
    optimal = optimal_values(mdp)
    start = mdp.pair_offsets[X0]
    uninformative_q = [
        optimal.q_values[0, start + a] for a in range(d) if a != k - 1
    ]

    console.result(f"feature_dimension\t{instance.feature_dimension}")
    console.result(f"active_coordinates\t{len(mdp.active_set)}")
    console.result(f"menu_sizes\t{' '.join(map(str, mdp.actions_per_state))}")
    console.result(f"clamped_actions\t{int(instance.clamped.sum())}")
    console.result(f"optimal_value\t{_real(optimal.values[0, X0])}")
    console.result(f"uninformative_value\t{_real(max(uninformative_q))}")
    console.result(f"closed_form\t{_real(uninformative_optimal_value(instance))}")
    console.result(f"kl_bound\t{_real(instance.kl_bound)}")
    if k >= 1:
        policy = exploratory_policy_for(instance)
        full_sigma = expected_covariance(mdp, policy).sigma_min
        console.result(f"sigma_min\t{_real(full_sigma)}")
        sigma = exploratory_block_sigma_min(instance, policy)
        console.result(f"sigma_min_theta_block\t{_real(sigma)}")

    if ctx.obj.get("out") is not None:
        target = ctx.obj["out"] / "hard_instance.json"
        path = dump_instance(mdp, target, instance.sidecar())
        console.success(f"인스턴스 저장: {path}")

    if not diagnose:
        return
    record = run_baseline(
        mdp,
        BaselineKind.UNIFORM_RANDOM,
        episodes,
        seed,
        keep_trajectories=True,
    )
    tau = stopping_time(record.trajectories, instance, episodes)
    z_tilde = select_z_tilde(
        instance, x_u_visitation_weights(record.trajectories, instance, upto=tau - 1)
    )
    alternative = build_alternative_instance(instance, z_tilde)
    report = hard_run_diagnostics(record.trajectories, instance, episodes, alternative)
    if report.kl is None:
        raise InvalidInstanceError(
            "대안 인스턴스 KL 진단 결과가 없습니다", "alternative"
        )
    console.result(f"tau\t{report.tau}")
    console.result(f"event_d\t{str(report.event_d).lower()}")
    console.result(f"visitation_sum\t{_real(report.visitation_sum)}")
    console.result(f"z_tilde\t{' '.join(str(int(v)) for v in z_tilde)}")
    console.result(f"kl_total\t{_real(report.kl.total)}")
    console.result(f"kl_within_bound\t{str(report.kl.within_bound).lower()}")
    console.result(f"uniform_regret\t{_real(record.total_regret)}")


@cli.command()
@click.option(
    "--data",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="회귀 데이터 CSV (y, phi_1..phi_d)",
)
@click.option("--lambda", "lam", required=True, type=float, help="ℓ₁ 페널티 λ₁")
@domain_errors
def lasso(data: Path, lam: float) -> None:
    """독립 Lasso 적합 (가중치 출력)"""
    if lam < 0:
        raise click.BadParameter("λ₁은 0 이상이어야 합니다", param_hint="--lambda")
    fit = lasso_fit(RegressionDataset.from_csv(data), LassoConfig(lambda_=lam))
    for coordinate, value in enumerate(fit.weights):
        console.result(f"w_{coordinate + 1}\t{_real(value)}")
    console.result(f"objective\t{_real(fit.objective)}")
    console.result(f"sweeps\t{fit.sweeps}")
    console.result(f"converged\t{str(fit.converged).lower()}")
    if not fit.converged:
        console.warning("좌표 하강법이 최대 스윕 안에 수렴하지 않았습니다.")


@cli.command()
@click.option(
    "--curve",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="curve.csv 또는 summary.csv",
)
@domain_errors
def slope(curve: Path) -> None:
    """후회 곡선 log-log 기울기 적합"""
    fit = fit_regret_slope(read_curve_csv(curve))
    console.result(f"slope {fit.slope:.4f} ± {fit.half_width:.4f}")
    console.result(f"slope\t{_real(fit.slope)}")
    console.result(f"intercept\t{_real(fit.intercept)}")
    console.result(f"half_width\t{_real(fit.half_width)}")
    if fit.excluded_points:
        console.warning(f"제외된 격자점: {list(fit.excluded_points)}")


@cli.command(name="re")
@click.option(
    "--matrix",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="대칭 행렬 CSV (쉼표 구분)",
)
@click.option("--s", "s", required=True, type=int, help="희소도 s")
@click.option(
    "--budget",
    type=int,
    default=DEFAULT_RE_BUDGET,
    show_default=True,
    help="무작위 탐색 지지집합 수",
)
@click.pass_context
@domain_errors
def restricted_eigen(ctx: click.Context, matrix: Path, s: int, budget: int) -> None:
    """제한 고유값 C_min 구간 추정"""
    values = np.loadtxt(matrix, delimiter=",", ndmin=2)
    rng = np.random.default_rng(ctx.obj.get("seed") or 0)
    try:
        interval = restricted_eigenvalue_estimate(values, s, budget, rng)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e
    console.result(f"lower\t{_real(interval.lower)}")
    console.result(f"upper\t{_real(interval.upper)}")
    console.result(f"search_upper\t{_real(interval.search_upper)}")
    if interval.enumerated_upper is not None:
        console.result(f"enumerated_upper\t{_real(interval.enumerated_upper)}")
    support = " ".join(str(j + 1) for j in interval.best_support)
    console.result(f"best_support\t{support}")


def config_debug_mode(value: str | None = None) -> None:
    """debug_mode 설정을 처리합니다."""
    if value is not None:
        debug_mode = value.lower() == "on"
        if set_default_debug_mode(debug_mode):
            console.success(
                f"디버그 모드가 {'활성화' if debug_mode else '비활성화'}되었습니다."
            )
        else:
            console.error("디버그 모드 설정에 실패했습니다.")
            return
    else:
        status = "활성화" if console.is_debug_mode() else "비활성화"
        console.info(f"현재 디버그 모드: {status}")
        console.info(
            "디버그 모드를 변경하려면 'sparserl config debug-mode on' 또는 "
            "'sparserl config debug-mode off' 명령어를 사용하세요."
        )


def config_list() -> None:
    """모든 설정을 표시합니다."""
    console.result("==== sparserl 설정 ====")
    console.result(f"출력 디렉토리: {get_default_output_dir()}")
    console.result(f"디버그 모드: {console.is_debug_mode()}")
    console.result(f"시드 환경변수: {SEED_ENV_VAR}")


@cli.group()
def config() -> None:
    """설정 관리"""
    pass


@config.command()
@click.argument("value", type=click.Choice(["on", "off"]), required=False)
def debug_mode(value: str | None) -> None:
    """디버그 모드 설정 (on / off)"""
    config_debug_mode(value)


@config.command(name="output-dir")
@click.argument("directory_path", required=False)
def output_dir(directory_path: str | None) -> None:
    """기본 결과 출력 디렉토리 설정"""
    if directory_path is not None:
        set_default_output_dir(directory_path)
    else:
        console.info(f"현재 기본 출력 디렉토리: {get_default_output_dir()}")


@config.command(name="list")
def show_config() -> None:
    """모든 설정 표시"""
    config_list()


def main() -> None:
    """애플리케이션의 메인 진입점."""
    # 파일 로깅만 활성화, 콘솔 로깅은 디버그 모드에서만
    setup_logging(level=LOG_LEVEL_INFO)

    try:
        cli()
    except KeyboardInterrupt:
        console.info("\n프로그램이 사용자에 의해 중단되었습니다.")
        sys.exit(1)
    except Exception as e:
        console.error(f"오류 발생: {str(e)}", exception=e)
        sys.exit(1)


if __name__ == "__main__":
    main()
