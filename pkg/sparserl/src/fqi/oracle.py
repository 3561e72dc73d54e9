"""분석용 오라클 가중치 (테스트 전용, 에이전트는 사용하지 않음)."""

import numpy as np

from sparserl.src.linmdp.models import SparseLinearMDP


def oracle_bellman_weights(mdp: SparseLinearMDP, value_fn: np.ndarray) -> np.ndarray:
    """w̄_k = Σ_{x'} Π_{[0,H]}V(x')·ψ_k(x') (k ∈ K), 그 외 좌표는 0.

    r + φᵀw̄ 는 쌍마다 Π_{[0,H]}V 에 대한 벨만 백업과 같습니다.
    """
    value_fn = np.asarray(value_fn, dtype=np.float64)
    truncated = np.clip(value_fn, 0.0, float(mdp.horizon))
    weights = np.zeros(mdp.d)
    weights[list(mdp.active_set)] = mdp.factors @ truncated
    return weights
