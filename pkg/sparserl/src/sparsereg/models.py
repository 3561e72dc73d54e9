"""희소 회귀 데이터 모델과 설정."""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError


class LambdaMode(str, Enum):
    """λ₁ 튜닝 방식.

    LEMMA: H·√(log(2d/δ)/(RH)) (fold 크기 기반, 기본값)
    THEOREM: H·√(log(2d)/N) (전체 에피소드 수 기반)
    """

    LEMMA = "lemma"
    THEOREM = "theorem"

    @classmethod
    def from_string(cls, value: str) -> "LambdaMode":
        for mode in cls:
            if mode.value == value.lower():
                return mode
        raise ValueError(f"알 수 없는 λ 모드: {value}")


class LassoConfig(BaseModel):
    """Lasso 좌표 하강법 설정.

    lambda_가 None이면 호출자(FQI)가 lambda_mode와 δ로 fold마다 계산합니다.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    lambda_: float | None = Field(default=None, alias="lambda", ge=0.0)
    tolerance: float = Field(default=1e-8, gt=0.0)
    max_sweeps: int = Field(default=10000, ge=1)
    delta: float = Field(default=0.1, gt=0.0, lt=1.0)
    lambda_mode: LambdaMode = LambdaMode.LEMMA


@dataclass(frozen=True, eq=False)
class RegressionDataset:
    """설계 행 φᵢ ∈ R^d 와 목표값 yᵢ 의 회귀 데이터."""

    features: np.ndarray
    targets: np.ndarray

    def __post_init__(self) -> None:
        features = np.array(self.features, dtype=np.float64, copy=True)
        targets = np.array(self.targets, dtype=np.float64, copy=True)
        if features.ndim != 2:
            raise InvalidInstanceError("설계 행렬은 2차원이어야 합니다", "features")
        if targets.shape != (features.shape[0],):
            raise InvalidInstanceError(
                f"목표값 길이 {targets.shape}가 표본 수 {features.shape[0]}와 다릅니다",
                "targets",
            )
        if not (np.all(np.isfinite(features)) and np.all(np.isfinite(targets))):
            raise InvalidInstanceError("회귀 데이터에 유한하지 않은 값이 있습니다")
        features.setflags(write=False)
        targets.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "targets", targets)

    @property
    def n(self) -> int:
        return int(self.features.shape[0])

    @property
    def d(self) -> int:
        return int(self.features.shape[1])

    @classmethod
    def from_csv(cls, path: Path) -> "RegressionDataset":
        """`y, phi_1..phi_d` 헤더를 가진 CSV에서 데이터를 읽습니다.

        Raises:
            InvalidInstanceError: 파일을 읽을 수 없거나 헤더/값이 잘못된 경우
        """
        try:
            with open(path, encoding="utf-8") as f:
                header = [name.strip() for name in f.readline().split(",")]
            data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except (OSError, ValueError) as e:
            raise InvalidInstanceError(f"회귀 데이터 CSV를 읽을 수 없습니다: {path} ({e})") from e
        expected = ["y"] + [f"phi_{j}" for j in range(1, len(header))]
        if header != expected or len(header) < 2:
            raise InvalidInstanceError(
                f"CSV 헤더는 y, phi_1..phi_d 형식이어야 합니다: {header}", "header"
            )
        if data.shape[1] != len(header):
            raise InvalidInstanceError("CSV 열 수가 헤더와 다릅니다", "columns")
        return cls(features=data[:, 1:], targets=data[:, 0])


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """회귀 적합 결과 (가중치 벡터와 수렴 정보)."""

    weights: np.ndarray
    converged: bool
    sweeps: int
    objective: float
    objective_history: tuple[float, ...] = ()


@dataclass(frozen=True, eq=False)
class RestrictedEigenvalueInterval:
    """제한 최소 고유값 C_min(M, s)의 구간 추정.

    lower는 σ_min(M)으로 보장된 하한이고, upper는 무작위 탐색(작은 문제에서는 지지집합
    전수 열거 포함)으로 찾은 가장 작은 원뿔 비율입니다.
    """

    lower: float
    upper: float
    search_upper: float
    enumerated_upper: float | None
    best_support: tuple[int, ...]

    @property
    def width(self) -> float:
        return self.upper - self.lower
