"""동적 계획법 결과 데이터 모델."""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from sparserl.src.linmdp.models import SparseLinearMDP
from sparserl.src.sparsereg.models import RestrictedEigenvalueInterval


@dataclass(frozen=True, eq=False)
class ValueSequence:
    """단계별 가치 함수 V_h와 행동 가치 Q_h.

    values는 (H+1, 상태 수) 모양이고 마지막 행이 V_{H+1} ≡ 0 입니다.
    q_values는 (H, 쌍 수) 모양입니다. greedy_actions는 최적 백업이 기록한
    단계별 argmax 행동(동률이면 가장 작은 인덱스)이며 정책 평가 결과에는 없습니다.
    """

    values: np.ndarray
    q_values: np.ndarray
    greedy_actions: np.ndarray | None = None

    @property
    def horizon(self) -> int:
        return int(self.q_values.shape[0])

    @property
    def initial_values(self) -> np.ndarray:
        """V_1(x)."""
        return self.values[0]

    def expected_initial_value(self, mdp: SparseLinearMDP) -> float:
        """E_{x₁~ξ₀}[V_1(x₁)]."""
        return float(mdp.initial_distribution @ self.values[0])

    def to_csv(self, mdp: SparseLinearMDP, path: Path) -> Path:
        """디버깅용 CSV로 내보냅니다 (h, state, V, Q_0..Q_{A-1}; h는 1부터)."""
        max_actions = max(mdp.actions_per_state)
        header = ["h", "state", "V"] + [f"Q_{a}" for a in range(max_actions)]
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for step in range(self.horizon + 1):
                for state in range(mdp.n_states):
                    row = [str(step + 1), mdp.state_labels[state]]
                    row.append(f"{self.values[step, state]:.17g}")
                    q_cells = [""] * max_actions
                    if step < self.horizon:
                        start = mdp.pair_offsets[state]
                        for action in range(mdp.actions_per_state[state]):
                            q = self.q_values[step, start + action]
                            q_cells[action] = f"{q:.17g}"
                    writer.writerow(row + q_cells)
        return path


@dataclass(frozen=True, eq=False)
class OccupancyTable:
    """정책의 평균 방문 빈도 μ^π(x,a) = (1/H) Σ_h Pr(x_h = x, a_h = a)."""

    frequencies: np.ndarray
    per_step: np.ndarray

    @property
    def total(self) -> float:
        return float(self.frequencies.sum())


@dataclass(frozen=True, eq=False)
class CovarianceReport:
    """정책의 기대 비중심 공분산 Σ^π 와 최소 고유값."""

    matrix: np.ndarray
    sigma_min: float
    occupancy: OccupancyTable
    re_interval: RestrictedEigenvalueInterval | None = None
