"""에이전트 실행 기록과 탐색 예산 모델."""

import csv
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from sparserl.src.fqi.models import WeightStack
from sparserl.src.linmdp.models import Phase, Trajectory

REGRET_TOLERANCE = 1e-9
RUN_COLUMNS = (
    "episode",
    "phase",
    "initial_state",
    "episode_regret",
    "cumulative_regret",
)


class BudgetMode(str, Enum):
    """탐색 길이 N₁ 선택 방식."""

    ORACLE = "oracle"
    CONSERVATIVE = "conservative"
    FIXED = "fixed"

    @classmethod
    def from_string(cls, value: str) -> "BudgetMode":
        for mode in cls:
            if mode.value == value.lower():
                return mode
        raise ValueError(f"알 수 없는 예산 모드: {value}")


class BaselineKind(str, Enum):
    """비교 기준 에이전트 종류."""

    UNIFORM_RANDOM = "uniform-random"
    RIDGE_FQI_ETC = "ridge-fqi-etc"
    ORACLE_OPTIMAL = "oracle-optimal"

    @classmethod
    def from_string(cls, value: str) -> "BaselineKind":
        for kind in cls:
            if kind.value == value.lower():
                return kind
        raise ValueError(f"알 수 없는 기준 에이전트: {value}")


class ExplorationBudget(BaseModel):
    """탐색 단계 길이 N₁과 그 계산 입력."""

    model_config = ConfigDict(extra="forbid")

    mode: BudgetMode
    exploration_episodes: int = Field(ge=1)
    total_episodes: int = Field(ge=1)
    horizon: int = Field(ge=1)
    d: int = Field(ge=1)
    s: int = Field(ge=1)
    c_min: float = Field(gt=0.0)
    delta: float = Field(gt=0.0, lt=1.0)
    scale: float = Field(default=1.0, gt=0.0)
    raw_value: float = Field(default=0.0, ge=0.0)
    capped: bool = False

    @model_validator(mode="after")
    def _check_rounding(self) -> "ExplorationBudget":
        if self.exploration_episodes % self.horizon != 0:
            raise ValueError("N₁은 H의 배수여야 합니다")
        if self.exploration_episodes > self.total_episodes:
            raise ValueError("N₁은 N 이하여야 합니다")
        return self

    @property
    def episodes_per_fold(self) -> int:
        """R = N₁ / H."""
        return self.exploration_episodes // self.horizon


@dataclass(frozen=True, eq=False)
class RunRecord:
    """온라인 실행 한 번의 에피소드별 후회(regret) 기록.

    episode_regret[n] = V*₁(x₁ⁿ) − V^{πₙ}₁(x₁ⁿ) 이며 동적 계획법으로 정확히 계산합니다.
    """

    agent: str
    initial_states: np.ndarray
    phases: tuple[Phase, ...]
    episode_regret: np.ndarray
    exploration_episodes: int
    horizon: int
    seed: int
    config_hash: str = ""
    weights: WeightStack | None = None
    quality_flags: tuple[str, ...] = ()
    trajectories: tuple[Trajectory, ...] = ()
    cumulative_regret: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        regret = np.array(self.episode_regret, dtype=np.float64, copy=True)
        states = np.array(self.initial_states, dtype=np.int64, copy=True)
        if regret.shape != states.shape or regret.size != len(self.phases):
            raise ValueError("에피소드별 배열 길이가 서로 다릅니다")
        cumulative = np.cumsum(regret)
        for array in (regret, states, cumulative):
            array.setflags(write=False)
        object.__setattr__(self, "episode_regret", regret)
        object.__setattr__(self, "initial_states", states)
        object.__setattr__(self, "cumulative_regret", cumulative)

    @property
    def n_episodes(self) -> int:
        return int(self.episode_regret.size)

    @property
    def episodes_per_fold(self) -> int:
        return self.exploration_episodes // self.horizon if self.horizon else 0

    @property
    def total_regret(self) -> float:
        return float(self.cumulative_regret[-1]) if self.n_episodes else 0.0

    def phase_regret(self, phase: Phase) -> float:
        """해당 단계 태그 에피소드들의 후회 합."""
        mask = np.array([tag == phase for tag in self.phases], dtype=bool)
        return float(self.episode_regret[mask].sum()) if mask.any() else 0.0

    def phase_count(self, phase: Phase) -> int:
        return sum(1 for tag in self.phases if tag == phase)

    @property
    def lasso_converged(self) -> bool:
        return self.weights is None or self.weights.all_converged

    def manifest(self, config: dict[str, Any] | None = None) -> dict[str, Any]:
        data: dict[str, Any] = {
            "agent": self.agent,
            "N": self.n_episodes,
            "N1": self.exploration_episodes,
            "R": self.episodes_per_fold,
            "H": self.horizon,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "total_regret": self.total_regret,
            "quality_flags": list(self.quality_flags),
        }
        if self.weights is not None:
            data["converged"] = list(self.weights.converged)
            data["lambdas"] = list(self.weights.lambdas)
        if config is not None:
            data["config"] = config
        return data

    def to_csv(self, path: Path, config: dict[str, Any] | None = None) -> Path:
        """에피소드별 CSV와 `<이름>.manifest.json` 매니페스트를 씁니다.

        episode는 1부터, initial_state는 0부터 셉니다.
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(RUN_COLUMNS)
            for index in range(self.n_episodes):
                writer.writerow(
                    [
                        index + 1,
                        self.phases[index].value,
                        int(self.initial_states[index]),
                        f"{self.episode_regret[index]:.17g}",
                        f"{self.cumulative_regret[index]:.17g}",
                    ]
                )
        manifest_path = path.with_name(path.stem + ".manifest.json")
        manifest_path.write_text(
            json.dumps(self.manifest(config), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        return path
