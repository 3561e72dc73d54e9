"""상태-행동 특징 맵(feature map) 모듈."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError

SUP_NORM_TOLERANCE = 1e-12
# 원-핫 특징 테이블은 d×d 밀집 행렬이므로 메모리 상한을 둔다
MAX_TABULAR_DIMENSION = 4096


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """상태-행동 쌍마다 길이 d의 특징 벡터를 갖는 테이블.

    행 순서는 MDP의 쌍(pair) 순서(상태 우선, 상태 내 행동 순)를 따릅니다.
    생성 시 모든 항목의 절댓값이 1 이하인지 검증합니다.
    """

    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.float64, copy=True)
        if table.ndim != 2 or table.shape[1] < 1:
            raise InvalidInstanceError(
                f"특징 테이블은 (쌍 수, d) 모양의 2차원 배열이어야 합니다: {table.shape}",
                field="phi",
            )
        if not np.all(np.isfinite(table)):
            raise InvalidInstanceError("특징 테이블에 유한하지 않은 값이 있습니다", "phi")
        sup_norm = float(np.max(np.abs(table))) if table.size else 0.0
        if sup_norm > 1.0 + SUP_NORM_TOLERANCE:
            raise InvalidInstanceError(
                f"특징 벡터의 sup-norm이 1을 넘습니다: {sup_norm:.17g}", field="phi"
            )
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def d(self) -> int:
        """특징 차원."""
        return int(self.table.shape[1])

    @property
    def n_pairs(self) -> int:
        """상태-행동 쌍의 수."""
        return int(self.table.shape[0])

    @cached_property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.table))) if self.table.size else 0.0

    def vector(self, pair: int) -> np.ndarray:
        """쌍 인덱스의 특징 벡터를 반환합니다."""
        return self.table[pair]


def build_tabular_feature_map(num_states: int, num_actions: int) -> FeatureMap:
    """테이블형 MDP용 원-핫 특징 맵을 만듭니다.

    쌍 (x, a)의 인덱스는 x * num_actions + a 이며 φ(x, a)는 그 위치의 지시 벡터입니다.

    Args:
        num_states: 상태 수
        num_actions: 상태당 행동 수

    Returns:
        FeatureMap: d = num_states * num_actions 인 특징 맵

    Raises:
        InvalidInstanceError: 크기가 양수가 아니거나 d가 상한을 넘는 경우
    """
    if num_states < 1 or num_actions < 1:
        raise InvalidInstanceError(
            f"상태 수와 행동 수는 양수여야 합니다: ({num_states}, {num_actions})"
        )
    d = num_states * num_actions
    if d > MAX_TABULAR_DIMENSION:
        raise InvalidInstanceError(
            f"테이블형 특징 차원 {d}가 상한 {MAX_TABULAR_DIMENSION}을 넘습니다", "d"
        )
    return FeatureMap(np.eye(d, dtype=np.float64))
