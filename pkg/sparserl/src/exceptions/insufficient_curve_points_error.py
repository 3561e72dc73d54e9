"""후회 곡선 기울기 추정 관련 예외 클래스"""

from sparserl.src.exceptions.sparse_rl_error import SparseRLError


class InsufficientCurvePointsError(SparseRLError):
    """기울기 적합에 사용할 수 있는 격자점이 3개 미만일 때 발생하는 예외"""

    def __init__(self, usable_points: int, excluded: list[int] | None = None) -> None:
        self.usable_points = usable_points
        self.excluded = excluded or []
        super().__init__(
            f"사용 가능한 격자점이 {usable_points}개뿐입니다 (최소 3개 필요)"
        )

    def __str__(self) -> str:
        error_msg = super().__str__()
        if self.excluded:
            error_msg += f" (제외된 N: {', '.join(map(str, self.excluded))})"
        return error_msg
