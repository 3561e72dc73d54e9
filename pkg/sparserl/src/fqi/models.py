"""FQI 데이터 모델: 에피소드 fold 묶음, 가중치 스택, 에이전트가 보는 MDP 정보."""

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from sparserl.src.linmdp.models import SparseLinearMDP, Trajectory


@dataclass(frozen=True, eq=False)
class MDPView:
    """에이전트가 아는 MDP 정보: 보상, 특징 맵, 행동 메뉴, horizon.

    전이 커널과 ψ는 포함하지 않습니다.
    """

    rewards: np.ndarray
    phi: np.ndarray
    actions_per_state: tuple[int, ...]
    horizon: int

    @classmethod
    def from_mdp(cls, mdp: SparseLinearMDP) -> "MDPView":
        return cls(
            rewards=mdp.rewards,
            phi=mdp.phi,
            actions_per_state=mdp.actions_per_state,
            horizon=mdp.horizon,
        )

    @property
    def d(self) -> int:
        return int(self.phi.shape[1])

    @property
    def n_states(self) -> int:
        return len(self.actions_per_state)

    @property
    def pair_offsets(self) -> np.ndarray:
        offsets = np.zeros(self.n_states + 1, dtype=np.int64)
        offsets[1:] = np.cumsum(self.actions_per_state)
        return offsets


@dataclass(frozen=True, eq=False)
class EpisodeBatch:
    """탐색 에피소드를 H개의 fold로 나눈 묶음. fold h(0부터)는 단계 h 회귀에만 쓰입니다."""

    episodes: tuple[Trajectory, ...]
    horizon: int
    episodes_per_fold: int

    def fold(self, step: int) -> tuple[Trajectory, ...]:
        start = step * self.episodes_per_fold
        return self.episodes[start : start + self.episodes_per_fold]

    def fold_sizes(self) -> tuple[int, ...]:
        return tuple(len(self.fold(step)) for step in range(self.horizon))


@dataclass(frozen=True, eq=False)
class WeightStack:
    """단계별 가중치 ŵ_1..ŵ_{H+1} (행 0..H, 마지막 행은 0)과 단계별 수렴 플래그."""

    weights: np.ndarray
    converged: tuple[bool, ...]
    lambdas: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=np.float64, copy=True)
        if np.any(weights[-1] != 0.0):
            raise ValueError("마지막 단계 가중치 ŵ_{H+1}은 정확히 0이어야 합니다")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @property
    def horizon(self) -> int:
        return int(self.weights.shape[0]) - 1

    @property
    def all_converged(self) -> bool:
        return all(self.converged)

    def to_csv(self, path: Path) -> Path:
        """(h, coordinate, value) 행으로 내보내고 수렴 플래그는 사이드카 매니페스트에 씁니다.

        h와 coordinate는 1부터 셉니다.
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["h", "coordinate", "value"])
            for step, row in enumerate(self.weights):
                for coordinate, value in enumerate(row):
                    writer.writerow([step + 1, coordinate + 1, f"{value:.17g}"])
        manifest = {
            "horizon": self.horizon,
            "converged": list(self.converged),
            "lambdas": list(self.lambdas),
        }
        self.manifest_path(path).write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return path

    @staticmethod
    def manifest_path(path: Path) -> Path:
        return path.with_name(path.stem + ".manifest.json")
