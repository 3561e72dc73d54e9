"""대칭 행렬 입력 검증 관련 예외 클래스"""

from sparserl.src.exceptions.sparse_rl_error import SparseRLError


class NonSymmetricMatrixError(SparseRLError):
    """고유값 계산에 비대칭 행렬이 전달되었을 때 발생하는 예외"""

    def __init__(self, asymmetry: float, tolerance: float) -> None:
        self.asymmetry = asymmetry
        self.tolerance = tolerance
        super().__init__("행렬이 대칭이 아닙니다")

    def __str__(self) -> str:
        return (
            f"{super().__str__()} "
            f"(최대 비대칭 {self.asymmetry:.3e} > 허용 오차 {self.tolerance:.1e})"
        )
