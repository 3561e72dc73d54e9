"""log-log 회귀로 후회 지수(기울기)를 추정합니다."""

import numpy as np
from scipy.stats import linregress, norm

from sparserl.src.exceptions.insufficient_curve_points_error import (
    InsufficientCurvePointsError,
)
from sparserl.src.harness.models import RegretCurve, SlopeFit
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

MIN_POINTS = 3
CONFIDENCE = 0.95


def fit_slope_points(grid: tuple[int, ...] | list[int], means: np.ndarray) -> SlopeFit:
    """(log N, log 평균 후회) 최소제곱 적합.

    평균이 0 이하인 점은 경고와 함께 제외합니다. 반폭은 기울기 표준오차에
    양측 95% 정규 분위수를 곱한 값입니다.

    Raises:
        InsufficientCurvePointsError: 사용 가능한 점이 3개 미만인 경우
    """
    grid = np.asarray(grid, dtype=np.float64)
    means = np.asarray(means, dtype=np.float64)
    usable = (means > 0.0) & np.isfinite(means) & (grid > 0.0)
    excluded = [int(n) for n in grid[~usable]]
    if excluded:
        logger.warning(f"평균 후회가 양수가 아닌 격자점을 제외합니다: {excluded}")
    if int(usable.sum()) < MIN_POINTS:
        raise InsufficientCurvePointsError(int(usable.sum()), excluded)

    result = linregress(np.log(grid[usable]), np.log(means[usable]))
    quantile = float(norm.ppf(0.5 + CONFIDENCE / 2.0))
    return SlopeFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        half_width=float(result.stderr) * quantile,
        used_points=tuple(int(n) for n in grid[usable]),
        excluded_points=tuple(excluded),
    )


def fit_regret_slope(curve: RegretCurve) -> SlopeFit:
    """후회 곡선 평균으로 기울기, 절편, 95% 신뢰 반폭을 구합니다."""
    return fit_slope_points(curve.grid, curve.means)
