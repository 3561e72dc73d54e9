"""실험 설정 관련 예외 클래스"""

from pathlib import Path

from sparserl.src.exceptions.sparse_rl_error import SparseRLError


class ExperimentConfigError(SparseRLError):
    """실험 설정을 읽거나 출력 디렉토리를 쓸 수 없을 때 발생하는 예외"""

    def __init__(
        self,
        message: str,
        path: Path | None = None,
        cause: Exception | None = None,
    ) -> None:
        super().__init__(message)
        self.path = path
        self.cause = cause

    def __str__(self) -> str:
        error_msg = super().__str__()
        if self.path is not None:
            error_msg += f" (경로: {self.path})"
        if self.cause is not None:
            error_msg += f" (원인: {type(self.cause).__name__}: {self.cause})"
        return error_msg
