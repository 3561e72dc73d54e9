"""탐색 데이터의 fold 분할."""

from collections.abc import Sequence

from sparserl.src.exceptions.fold_partition_error import FoldPartitionError
from sparserl.src.fqi.models import EpisodeBatch
from sparserl.src.linmdp.models import Trajectory


def partition_folds(batch: Sequence[Trajectory], horizon: int) -> EpisodeBatch:
    """에피소드를 도착 순서대로 H개의 연속 블록으로 나눕니다.

    fold h(1부터)는 에피소드 (h−1)·R+1 .. h·R 을 받습니다 (R = |batch|/H).

    Raises:
        FoldPartitionError: |batch|가 H의 양의 배수가 아닌 경우
    """
    if horizon < 1 or not batch or len(batch) % horizon != 0:
        raise FoldPartitionError(len(batch), horizon)
    return EpisodeBatch(
        episodes=tuple(batch),
        horizon=horizon,
        episodes_per_fold=len(batch) // horizon,
    )
