"""정책 정의 범위 관련 예외 클래스"""

from sparserl.src.exceptions.sparse_rl_error import SparseRLError


class PolicyCoverageError(SparseRLError):
    """정책이 필요한 상태에 대한 행동 분포를 갖지 않을 때 발생하는 예외"""

    def __init__(self, state: int) -> None:
        self.state = state
        super().__init__(f"상태 {state}에 대한 정책 행(row)이 정의되지 않았습니다")
