"""순환 좌표 하강법 Lasso.

목적 함수는 (1/n)Σᵢ(yᵢ − φᵢᵀw)² + λ₁‖w‖₁ 이며 ½ 계수가 없습니다.
좌표 갱신:
    w_j ← soft_threshold(w_j + Σᵢφᵢⱼrᵢ / Σᵢφᵢⱼ², n·λ₁ / (2Σᵢφᵢⱼ²))
잔차 r = y − Φw 는 갱신마다 점진적으로 유지합니다.
"""

import math

import numpy as np

from sparserl.src.sparsereg.models import (
    LambdaMode,
    LassoConfig,
    RegressionDataset,
    RegressionFit,
)
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)


def soft_threshold(value: float, threshold: float) -> float:
    """sign(v)·max(|v|−t, 0).

    Raises:
        ValueError: threshold가 음수인 경우
    """
    if threshold < 0.0:
        raise ValueError(f"threshold는 0 이상이어야 합니다: {threshold}")
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


def lasso_objective(data: RegressionDataset, weights: np.ndarray, lam: float) -> float:
    residual = data.targets - data.features @ weights
    return float(residual @ residual / data.n + lam * np.abs(weights).sum())


def kkt_violation(data: RegressionDataset, weights: np.ndarray, lam: float) -> float:
    """Lasso 최적성 조건의 최대 위반량을 반환합니다.

    w_j ≠ 0 이면 |g_j − λ·sign(w_j)|, w_j = 0 이면 max(|g_j| − λ, 0) 이고
    g = (2/n)Φᵀ(y − Φw) 입니다.
    """
    residual = data.targets - data.features @ weights
    gradient = 2.0 / data.n * (data.features.T @ residual)
    active = weights != 0.0
    violation = np.where(
        active,
        np.abs(gradient - lam * np.sign(weights)),
        np.maximum(np.abs(gradient) - lam, 0.0),
    )
    return float(violation.max()) if violation.size else 0.0


def regularization_strength(
    mode: LambdaMode,
    horizon: int,
    d: int,
    delta: float,
    fold_transitions: int | None = None,
    total_episodes: int | None = None,
) -> float:
    """λ₁ 튜닝 값을 계산합니다.

    Args:
        mode: LEMMA는 H·√(log(2d/δ)/(RH)), THEOREM은 H·√(log(2d)/N)
        horizon: H
        d: 특징 차원
        delta: 신뢰 수준 δ
        fold_transitions: fold 하나의 전이 수 RH (LEMMA 모드)
        total_episodes: 전체 에피소드 수 N (THEOREM 모드)

    Returns:
        float: λ₁
    """
    if mode == LambdaMode.LEMMA:
        if not fold_transitions:
            raise ValueError("LEMMA 모드에는 fold 전이 수가 필요합니다")
        return horizon * math.sqrt(math.log(2 * d / delta) / fold_transitions)
    if not total_episodes:
        raise ValueError("THEOREM 모드에는 전체 에피소드 수가 필요합니다")
    return horizon * math.sqrt(math.log(2 * d) / total_episodes)


def lasso_fit(
    data: RegressionDataset,
    cfg: LassoConfig,
    start: np.ndarray | None = None,
    record_objective: bool = False,
) -> RegressionFit:
    """Lasso를 순환 좌표 하강법으로 적합합니다.

    한 스윕의 최대 좌표 변화가 tolerance 이하이면 종료합니다. max_sweeps 안에
    수렴하지 못해도 예외 없이 converged=False 로 반환합니다. 제곱합이 0인 열은 0에
    고정됩니다.

    Args:
        data: 회귀 데이터 (n ≥ 1)
        cfg: Lasso 설정 (lambda_ 필수)
        start: 시작 가중치 (없으면 0 벡터)
        record_objective: 스윕별 목적 함수 값을 기록할지 여부

    Returns:
        RegressionFit: 가중치와 수렴 정보
    """
    if data.n < 1:
        raise ValueError("표본이 최소 1개 필요합니다")
    if cfg.lambda_ is None:
        raise ValueError("LassoConfig.lambda_가 설정되지 않았습니다")
    lam = float(cfg.lambda_)

    features = np.asfortranarray(data.features)
    n, d = features.shape
    weights = np.zeros(d) if start is None else np.array(start, dtype=np.float64)
    column_norms = np.einsum("ij,ij->j", features, features)
    frozen = column_norms == 0.0
    weights[frozen] = 0.0
    residual = data.targets - features @ weights

    history: list[float] = []
    if record_objective:
        history.append(lasso_objective(data, weights, lam))

    converged = False
    sweeps = 0
    while sweeps < cfg.max_sweeps:
        sweeps += 1
        max_change = 0.0
        for j in range(d):
            if frozen[j]:
                continue
            column = features[:, j]
            old = weights[j]
            rho = old + float(column @ residual) / column_norms[j]
            new = soft_threshold(rho, n * lam / (2.0 * column_norms[j]))
            change = new - old
            if change != 0.0:
                residual -= change * column
                weights[j] = new
                max_change = max(max_change, abs(change))
        if record_objective:
            history.append(lasso_objective(data, weights, lam))
        if max_change <= cfg.tolerance:
            converged = True
            break

    if not converged:
        logger.warning(
            f"Lasso가 {cfg.max_sweeps} 스윕 안에 수렴하지 않았습니다 (n={n}, d={d}, λ={lam})"
        )
    return RegressionFit(
        weights=weights,
        converged=converged,
        sweeps=sweeps,
        objective=lasso_objective(data, weights, lam),
        objective_history=tuple(history),
    )
