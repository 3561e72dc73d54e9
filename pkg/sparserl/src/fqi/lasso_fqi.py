"""Lasso fitted-Q-iteration 학습 단계와 탐욕 정책.

Q_w(x,a) = r(x,a) + φ(x,a)ᵀw 로 매개화하며, φᵀw는 다음 단계 기대 가치만 모델링합니다.
"""

from typing import Protocol

import numpy as np

from sparserl.src.dp.bellman import max_over_menus
from sparserl.src.fqi.models import EpisodeBatch, MDPView, WeightStack
from sparserl.src.linmdp.models import NonstationaryPolicy
from sparserl.src.sparsereg.lasso import lasso_fit, regularization_strength
from sparserl.src.sparsereg.models import LassoConfig, RegressionDataset, RegressionFit
from sparserl.src.sparsereg.ridge import ridge_fit
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)


class Regressor(Protocol):
    """단계별 회귀 전략."""

    def fit(self, data: RegressionDataset, start: np.ndarray) -> RegressionFit: ...

    @property
    def penalty(self) -> float: ...


class LassoRegressor:
    """Lasso 좌표 하강 회귀 (λ₁ 확정된 설정 사용)."""

    def __init__(self, cfg: LassoConfig) -> None:
        if cfg.lambda_ is None:
            raise ValueError("LassoRegressor에는 λ₁이 정해진 설정이 필요합니다")
        self.cfg = cfg

    @property
    def penalty(self) -> float:
        return float(self.cfg.lambda_ or 0.0)

    def fit(self, data: RegressionDataset, start: np.ndarray) -> RegressionFit:
        return lasso_fit(data, self.cfg, start=start)


class RidgeRegressor:
    """릿지 회귀 (같은 explore-then-commit 템플릿의 ℓ₂ 기준선)."""

    def __init__(self, alpha: float) -> None:
        self.alpha = alpha

    @property
    def penalty(self) -> float:
        return self.alpha

    def fit(
        self,
        data: RegressionDataset,
        start: np.ndarray,  # noqa: ARG002
    ) -> RegressionFit:
        return ridge_fit(data, self.alpha)


def q_values(view: MDPView, weights: np.ndarray) -> np.ndarray:
    """쌍별 Q_w(x,a) = r(x,a) + φ(x,a)ᵀw."""
    return view.rewards + view.phi @ weights


def state_values(view: MDPView, weights: np.ndarray) -> np.ndarray:
    """상태별 V_w(x) = max_a Q_w(x,a)."""
    return max_over_menus(view.pair_offsets, q_values(view, weights))[0]


def _fold_arrays(
    fold: tuple, offsets: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    pairs = []
    next_states = []
    for trajectory in fold:
        for transition in trajectory.steps:
            pairs.append(offsets[transition.state] + transition.action)
            next_states.append(transition.next_state)
    return np.asarray(pairs, dtype=np.int64), np.asarray(next_states, dtype=np.int64)


def resolve_lasso_config(
    cfg: LassoConfig,
    horizon: int,
    d: int,
    fold_transitions: int,
    total_episodes: int | None = None,
) -> LassoConfig:
    """λ₁이 비어 있으면 튜닝 모드에 따라 채운 설정을 반환합니다."""
    if cfg.lambda_ is not None:
        return cfg
    lam = regularization_strength(
        cfg.lambda_mode,
        horizon=horizon,
        d=d,
        delta=cfg.delta,
        fold_transitions=fold_transitions,
        total_episodes=total_episodes,
    )
    return cfg.model_copy(update={"lambda_": lam})


def lasso_fqi(
    folds: EpisodeBatch,
    view: MDPView,
    cfg: LassoConfig,
    total_episodes: int | None = None,
    regressor: Regressor | None = None,
) -> WeightStack:
    """h = H..1 후진 루프로 단계별 가중치를 적합합니다.

    fold h의 각 전이 (xᵢ, aᵢ, x'ᵢ)에 대해 목표값
    yᵢ = Π_{[0,H]} max_a Q_{ŵ_{h+1}}(x'ᵢ, a) 를 만들고 (마지막 단계는 0),
    {(φ(xᵢ,aᵢ), yᵢ)}에 회귀합니다. 단계 h 회귀는 ŵ_{h+1}에서 웜 스타트합니다.

    Args:
        folds: partition_folds 결과
        view: 보상, 특징, 행동 메뉴
        cfg: Lasso 설정 (λ₁이 없으면 튜닝 모드로 계산)
        total_episodes: 전체 에피소드 수 N (THEOREM λ 모드에서 사용)
        regressor: 회귀 전략 (없으면 Lasso)

    Returns:
        WeightStack: 단계별 가중치와 수렴 플래그
    """
    horizon = view.horizon
    if folds.horizon != horizon:
        raise ValueError(f"fold 수 {folds.horizon}가 horizon {horizon}와 다릅니다")
    if regressor is None:
        resolved = resolve_lasso_config(
            cfg,
            horizon,
            view.d,
            fold_transitions=folds.episodes_per_fold * horizon,
            total_episodes=total_episodes,
        )
        regressor = LassoRegressor(resolved)

    offsets = view.pair_offsets
    weights = np.zeros((horizon + 1, view.d))
    converged = [True] * horizon
    for step in range(horizon - 1, -1, -1):
        pairs, next_states = _fold_arrays(folds.fold(step), offsets)
        if step == horizon - 1:
            targets = np.zeros(pairs.size)
        else:
            next_values = state_values(view, weights[step + 1])
            targets = np.clip(next_values[next_states], 0.0, float(horizon))
        data = RegressionDataset(features=view.phi[pairs], targets=targets)
        fit = regressor.fit(data, start=weights[step + 1])
        weights[step] = fit.weights
        converged[step] = fit.converged
        logger.debug(
            f"FQI 단계 {step + 1}/{horizon}: n={data.n}, 스윕={fit.sweeps}, "
            f"nnz={int(np.count_nonzero(fit.weights))}, 수렴={fit.converged}"
        )

    if not all(converged):
        logger.warning(f"일부 단계의 회귀가 수렴하지 않았습니다: {converged}")
    return WeightStack(
        weights=weights,
        converged=tuple(converged),
        lambdas=(regressor.penalty,) * horizon,
    )


def greedy_policy(weights: WeightStack, view: MDPView) -> NonstationaryPolicy:
    """단계 h, 상태 x에서 argmax_a Q_{ŵ_h}(x,a) (동률이면 가장 작은 행동)."""
    offsets = view.pair_offsets
    actions = np.zeros((weights.horizon, view.n_states), dtype=np.int64)
    for step in range(weights.horizon):
        step_q = q_values(view, weights.weights[step])
        actions[step] = max_over_menus(offsets, step_q)[1]
    return NonstationaryPolicy(actions)
