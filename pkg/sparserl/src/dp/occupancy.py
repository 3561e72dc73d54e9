"""정책의 방문 빈도(occupancy)와 기대 특징 공분산의 정확한 전파 계산."""

from dataclasses import replace

import numpy as np

from sparserl.src.dp.models import CovarianceReport, OccupancyTable
from sparserl.src.linmdp.models import Policy, SparseLinearMDP
from sparserl.src.sparsereg.eigen import min_eigenvalue
from sparserl.src.sparsereg.restricted_eigen import restricted_eigenvalue_estimate


def occupancy_frequencies(mdp: SparseLinearMDP, policy: Policy) -> OccupancyTable:
    """ξ₀에서 시작해 상태 분포를 h = 1..H 로 전파하여 μ^π 를 구합니다."""
    per_step = np.zeros((mdp.horizon, mdp.n_pairs))
    state_dist = np.array(mdp.initial_distribution, dtype=np.float64)
    for step in range(mdp.horizon):
        per_step[step] = policy.pair_weights(mdp, step) * state_dist[mdp.pair_states]
        state_dist = per_step[step] @ mdp.transition_table
    return OccupancyTable(
        frequencies=per_step.sum(axis=0) / mdp.horizon, per_step=per_step
    )


def expected_covariance(mdp: SparseLinearMDP, policy: Policy) -> CovarianceReport:
    """Σ^π = Σ_{x,a} μ^π(x,a)·φ(x,a)φ(x,a)ᵀ 와 σ_min(Σ^π)를 계산합니다."""
    occupancy = occupancy_frequencies(mdp, policy)
    weighted = mdp.phi * occupancy.frequencies[:, None]
    matrix = weighted.T @ mdp.phi
    matrix = 0.5 * (matrix + matrix.T)
    return CovarianceReport(
        matrix=matrix, sigma_min=min_eigenvalue(matrix), occupancy=occupancy
    )


def attach_restricted_eigenvalue(
    report: CovarianceReport,
    s: int,
    search_budget: int,
    rng: np.random.Generator,
) -> CovarianceReport:
    """Σ^π 에 대한 제한 고유값 구간 C_min(Σ^π, s)를 채운 보고서를 반환합니다."""
    interval = restricted_eigenvalue_estimate(report.matrix, s, search_budget, rng)
    return replace(report, re_interval=interval)
