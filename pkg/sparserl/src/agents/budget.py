"""탐색 단계 길이 N₁ 선택."""

import math

from sparserl.src.agents.models import BudgetMode, ExplorationBudget
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

ORACLE_CONSTANT = 2048.0
CONSERVATIVE_CONSTANT = 512.0


def exploration_formula(
    mode: BudgetMode,
    total_episodes: int,
    horizon: int,
    d: int,
    s: int,
    c_min: float,
    delta: float,
) -> float:
    """반올림 전 N₁ 공식 값.

    oracle: (2048·s²·H⁴·N²·log(2dH/δ)/C_min²)^{1/3}
    conservative: (512·H⁴·N²·log(2dH/δ))^{1/3}
    """
    log_term = math.log(2.0 * d * horizon / delta)
    if mode == BudgetMode.ORACLE:
        inner = (
            ORACLE_CONSTANT * s**2 * horizon**4 * total_episodes**2 * log_term
        ) / c_min**2
    elif mode == BudgetMode.CONSERVATIVE:
        inner = CONSERVATIVE_CONSTANT * horizon**4 * total_episodes**2 * log_term
    else:
        raise ValueError("fixed 모드에는 공식이 없습니다")
    return inner ** (1.0 / 3.0)


def choose_exploration_length(
    total_episodes: int,
    horizon: int,
    d: int,
    s: int,
    c_min: float,
    delta: float,
    mode: BudgetMode,
    fixed_episodes: int | None = None,
    scale: float = 1.0,
) -> ExplorationBudget:
    """N₁을 계산하고 H의 배수로 올림한 뒤 N 이하로 자릅니다.

    Args:
        total_episodes: 전체 에피소드 수 N
        horizon: H
        d: 특징 차원
        s: 희소도
        c_min: 탐색 정책 공분산의 최소 고유값 하한
        delta: 신뢰 수준 δ
        mode: oracle / conservative / fixed
        fixed_episodes: fixed 모드에서 호출자가 정한 N₁
        scale: 공식 값에 곱하는 배율 (fixed 모드에서는 무시)

    Returns:
        ExplorationBudget: N₁과 상한 적용 여부(capped)

    Raises:
        ExperimentConfigError: 입력이 양수가 아니거나 N < H 인 경우
    """
    if min(total_episodes, horizon, d, s) < 1 or c_min <= 0.0 or scale <= 0.0:
        raise ExperimentConfigError("예산 입력은 모두 양수여야 합니다")
    if not 0.0 < delta < 1.0:
        raise ExperimentConfigError(f"δ는 (0,1) 안에 있어야 합니다: {delta}")
    cap = (total_episodes // horizon) * horizon
    if cap == 0:
        raise ExperimentConfigError(
            f"N={total_episodes}이 H={horizon}보다 작아 탐색 fold를 만들 수 없습니다"
        )

    if mode == BudgetMode.FIXED:
        if fixed_episodes is None or fixed_episodes < 1:
            raise ExperimentConfigError("fixed 모드에는 양의 N₁이 필요합니다")
        raw = float(fixed_episodes)
    else:
        raw = scale * exploration_formula(
            mode, total_episodes, horizon, d, s, c_min, delta
        )

    rounded = max(1, math.ceil(raw / horizon - 1e-12)) * horizon
    capped = rounded > cap
    if capped:
        logger.warning(f"N₁ 공식 값 {raw:.6g}이 N={total_episodes}을 넘어 {cap}으로 제한합니다")
    episodes = cap if capped else rounded
    logger.debug(f"탐색 예산 선택: mode={mode.value}, raw={raw:.6g}, N₁={episodes}")
    return ExplorationBudget(
        mode=mode,
        exploration_episodes=episodes,
        total_episodes=total_episodes,
        horizon=horizon,
        d=d,
        s=s,
        c_min=c_min,
        delta=delta,
        scale=scale,
        raw_value=raw,
        capped=capped,
    )


def regret_ceiling(
    total_episodes: int,
    horizon: int,
    d: int,
    s: int,
    c_min: float,
    delta: float,
) -> float:
    """누적 후회 상한 2·(2048·log(2dH/δ)/C_min²)^{1/3}·H^{4/3}·s^{2/3}·N^{2/3}."""
    log_term = math.log(2.0 * d * horizon / delta)
    return (
        2.0
        * (ORACLE_CONSTANT * log_term / c_min**2) ** (1.0 / 3.0)
        * horizon ** (4.0 / 3.0)
        * s ** (2.0 / 3.0)
        * total_episodes ** (2.0 / 3.0)
    )
