"""MDP 인스턴스 구성 관련 예외 클래스"""

from sparserl.src.exceptions.sparse_rl_error import SparseRLError


class InvalidInstanceError(SparseRLError):
    """인스턴스를 구성할 수 없을 때 발생하는 예외

    특징 맵의 sup-norm 위반, 배열 모양 불일치, 생성기 파라미터 범위 오류,
    손상된 인스턴스 파일 등이 해당됩니다.
    """

    def __init__(self, message: str, field: str | None = None) -> None:
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        error_msg = super().__str__()
        if self.field:
            error_msg += f" (필드: {self.field})"
        return error_msg
