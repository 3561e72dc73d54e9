"""실험 설정과 결과 모델."""

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from sparserl.src.agents.models import BaselineKind, BudgetMode
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.hardbench.models import RewardConvention
from sparserl.src.sparsereg.models import LassoConfig

UNHASHED_FIELDS = {"output_dir", "max_workers", "keep_run_files"}


class InstanceKind(str, Enum):
    RANDOM_SPARSE = "random-sparse"
    HARD = "hard"
    FILE = "file"


class AgentKind(str, Enum):
    LASSO_FQI = "lasso-fqi"
    UNIFORM_RANDOM = BaselineKind.UNIFORM_RANDOM.value
    RIDGE_FQI_ETC = BaselineKind.RIDGE_FQI_ETC.value
    ORACLE_OPTIMAL = BaselineKind.ORACLE_OPTIMAL.value

    @property
    def baseline(self) -> BaselineKind | None:
        if self == AgentKind.LASSO_FQI:
            return None
        return BaselineKind.from_string(self.value)


class InstanceSpec(BaseModel):
    """실험 환경 설정. kind에 따라 쓰는 필드가 다릅니다."""

    model_config = ConfigDict(extra="forbid")

    kind: InstanceKind = InstanceKind.RANDOM_SPARSE
    horizon: int = Field(default=3, ge=1)
    seed: int = Field(default=0, ge=0)
    # random-sparse
    num_states: int = Field(default=10, ge=1)
    num_actions: int = Field(default=4, ge=1)
    d: int = Field(default=60, ge=1)
    s: int = Field(default=3, ge=1)
    nuisance_scale: float = Field(default=0.0, ge=0.0, le=1.0)
    # hard
    k: int = Field(default=1, ge=0)
    epsilon: float | None = Field(default=None, gt=0.0)
    action_cap: int = Field(default=64, ge=2)
    reward_convention: RewardConvention = RewardConvention.ARRIVAL
    # file
    path: Path | None = None

    @model_validator(mode="after")
    def _check_file(self) -> "InstanceSpec":
        if self.kind == InstanceKind.FILE and self.path is None:
            raise ValueError("file 인스턴스에는 path가 필요합니다")
        return self

    @property
    def hard_epsilon(self) -> float:
        """ε (없으면 1/(8s))."""
        return self.epsilon if self.epsilon is not None else 1.0 / (8 * self.s)


class AgentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: AgentKind = AgentKind.LASSO_FQI
    ridge_alpha: float = Field(default=1.0, ge=0.0)


class BudgetSpec(BaseModel):
    """탐색 예산 설정. c_min이 없으면 탐색 정책의 σ_min(Σ^{π_e})를 씁니다."""

    model_config = ConfigDict(extra="forbid")

    mode: BudgetMode = BudgetMode.CONSERVATIVE
    c_min: float | None = Field(default=None, gt=0.0)
    delta: float = Field(default=0.1, gt=0.0, lt=1.0)
    fixed_episodes: int | None = Field(default=None, ge=1)
    scale: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_fixed(self) -> "BudgetSpec":
        if self.mode == BudgetMode.FIXED and self.fixed_episodes is None:
            raise ValueError("fixed 모드에는 fixed_episodes가 필요합니다")
        return self


class ExperimentConfig(BaseModel):
    """실험 설정 (YAML/JSON 파일 스키마)."""

    model_config = ConfigDict(extra="forbid")

    instance: InstanceSpec = Field(default_factory=InstanceSpec)
    agent: AgentSpec = Field(default_factory=AgentSpec)
    budget: BudgetSpec = Field(default_factory=BudgetSpec)
    lasso: LassoConfig = Field(default_factory=LassoConfig)
    grid: list[int] = Field(min_length=1)
    replicates: int = Field(default=1, ge=1)
    master_seed: int = Field(default=0, ge=0)
    output_dir: Path | None = None
    max_workers: int = Field(default=4, ge=1)
    keep_run_files: bool = True

    @model_validator(mode="after")
    def _check_grid(self) -> "ExperimentConfig":
        if any(n < 1 for n in self.grid):
            raise ValueError("grid의 모든 N은 양수여야 합니다")
        if len(set(self.grid)) != len(self.grid):
            raise ValueError("grid에 중복된 N이 있습니다")
        return self

    def hashed_fields(self) -> dict:
        """결과에 영향을 주는 필드 (출력 위치와 병렬도 제외)."""
        return self.model_dump(mode="json", by_alias=True, exclude=UNHASHED_FIELDS)

    def config_hash(self) -> str:
        """정렬된 JSON의 SHA256 해시."""
        key_string = json.dumps(
            self.hashed_fields(), sort_keys=True, ensure_ascii=False
        )
        return hashlib.sha256(key_string.encode("utf-8")).hexdigest()

    @classmethod
    def from_file(cls, path: Path) -> "ExperimentConfig":
        """YAML 또는 JSON 설정 파일을 읽습니다.

        Raises:
            ExperimentConfigError: 파일을 읽을 수 없거나 스키마가 맞지 않는 경우
        """
        try:
            raw = yaml.safe_load(path.read_text(encoding="utf-8"))
        except (OSError, yaml.YAMLError) as e:
            raise ExperimentConfigError(
                f"실험 설정 파일을 읽을 수 없습니다: {e}", path=path, cause=e
            ) from e
        if not isinstance(raw, dict):
            raise ExperimentConfigError("실험 설정은 매핑이어야 합니다", path=path)
        try:
            config = cls.model_validate(raw)
        except ValidationError as e:
            raise ExperimentConfigError(
                f"실험 설정이 올바르지 않습니다: {e}", path=path, cause=e
            ) from e
        if (
            config.instance.kind == InstanceKind.FILE
            and config.instance.path is not None
            and not config.instance.path.is_absolute()
        ):
            resolved = (path.parent / config.instance.path).resolve()
            instance = config.instance.model_copy(update={"path": resolved})
            config = config.model_copy(update={"instance": instance})
        return config


@dataclass(frozen=True, eq=False)
class RegretCurve:
    """격자 N별 복제 실행의 누적 후회."""

    grid: tuple[int, ...]
    values: np.ndarray
    means: np.ndarray = field(init=False)
    stderrs: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2 or values.shape[0] != len(self.grid):
            raise ValueError("values는 (격자 크기, 복제 수) 모양이어야 합니다")
        if not np.all(np.isfinite(values)):
            raise ValueError("누적 후회 값에 유한하지 않은 값이 있습니다")
        means = values.mean(axis=1)
        if values.shape[1] > 1:
            stderrs = values.std(axis=1, ddof=1) / np.sqrt(values.shape[1])
        else:
            stderrs = np.zeros(len(self.grid))
        for array in (values, means, stderrs):
            array.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stderrs", stderrs)

    @property
    def replicates(self) -> int:
        return int(self.values.shape[1])


@dataclass(frozen=True)
class SlopeFit:
    """log-log 최소제곱 기울기와 95% 신뢰 반폭."""

    slope: float
    intercept: float
    half_width: float
    used_points: tuple[int, ...]
    excluded_points: tuple[int, ...] = ()


@dataclass(frozen=True)
class ExperimentResult:
    """run_experiment 결과와 산출물 경로."""

    curve: RegretCurve
    config_hash: str
    output_dir: Path | None = None
    curve_path: Path | None = None
    summary_path: Path | None = None
    manifest_path: Path | None = None
    run_paths: tuple[Path, ...] = ()
    quality_flags: tuple[str, ...] = ()
