"""에피소드 fold 분할 관련 예외 클래스"""

from sparserl.src.exceptions.sparse_rl_error import SparseRLError


class FoldPartitionError(SparseRLError):
    """에피소드 수가 horizon의 양의 배수가 아닐 때 발생하는 예외"""

    def __init__(self, n_episodes: int, horizon: int) -> None:
        self.n_episodes = n_episodes
        self.horizon = horizon
        super().__init__(
            f"에피소드 수 {n_episodes}는 horizon {horizon}의 양의 배수여야 합니다"
        )
