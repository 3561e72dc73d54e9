"""제한 최소 고유값 C_min(M, s)의 구간 추정.

C_min(M, s) = min_{|S|≤s} min_{β: ‖β_{Sᶜ}‖₁ ≤ 3‖β_S‖₁} ⟨β, Mβ⟩ / ‖β_S‖₂².

지지집합 S ⊂ S' 이면 S의 원뿔이 S'의 원뿔에 포함되고 분모도 커지므로 크기가
정확히 s인 지지집합만 보면 충분합니다. 각 지지집합 안의 문제는 비볼록이므로
여러 시작점에서 투영 경사 하강으로 국소 최솟값을 찾습니다. 모든 반복점은 원뿔 안의
실제 벡터이므로 찾은 값은 항상 C_min의 상한입니다.
"""

import itertools
import math

import numpy as np

from sparserl.src.sparsereg.eigen import check_symmetric, max_eigenvalue, min_eigenvalue
from sparserl.src.sparsereg.models import RestrictedEigenvalueInterval
from sparserl.src.utils.logging import get_logger

logger = get_logger(__name__)

CONE_FACTOR = 3.0
ENUMERATION_MAX_DIMENSION = 12
ENUMERATION_MAX_SPARSITY = 3
STARTS_PER_SUPPORT = 8
MAX_ITERATIONS = 5000
RATIO_TOLERANCE = 1e-14


def project_rows_onto_l1_ball(rows: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """각 행을 ℓ₁ 공 {‖x‖₁ ≤ radius}에 유클리드 투영합니다 (정렬 기반)."""
    if rows.shape[1] == 0:
        return rows
    magnitudes = np.abs(rows)
    inside = magnitudes.sum(axis=1) <= radii
    ordered = -np.sort(-magnitudes, axis=1)
    excess = np.cumsum(ordered, axis=1) - radii[:, None]
    counts = np.arange(1, rows.shape[1] + 1)
    positive = ordered - excess / counts > 0.0
    last = rows.shape[1] - 1 - np.argmax(positive[:, ::-1], axis=1)
    theta = np.maximum(excess[np.arange(rows.shape[0]), last] / (last + 1), 0.0)
    projected = np.sign(rows) * np.maximum(magnitudes - theta[:, None], 0.0)
    return np.where(inside[:, None], rows, projected)


def _normalize_into_cone(betas: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """‖β_S‖₂ = 1 로 맞추고 β_{Sᶜ}를 반지름 3‖β_S‖₁ 의 ℓ₁ 공에 투영합니다."""
    support_part = betas * masks
    norms = np.linalg.norm(support_part, axis=1)
    norms = np.where(norms > 0.0, norms, 1.0)
    betas = betas / norms[:, None]
    support_part = betas * masks
    radii = CONE_FACTOR * np.abs(support_part).sum(axis=1)
    off_support = project_rows_onto_l1_ball(betas * (1.0 - masks), radii)
    return support_part + off_support * (1.0 - masks)


def _refine(matrix: np.ndarray, betas: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """행마다 비율 ⟨β,Mβ⟩/‖β_S‖² 를 투영 경사 하강으로 줄이고 행별 최솟값을 반환합니다."""
    top = max(max_eigenvalue(matrix), 0.0)
    betas = _normalize_into_cone(betas, masks)
    products = betas @ matrix
    ratios = (products * betas).sum(axis=1)
    best = ratios.copy()
    if top == 0.0:
        return best
    step = 0.5 / top
    for _ in range(MAX_ITERATIONS):
        gradient = 2.0 * (products - ratios[:, None] * betas * masks)
        betas = _normalize_into_cone(betas - step * gradient, masks)
        products = betas @ matrix
        new_ratios = (products * betas).sum(axis=1)
        best = np.minimum(best, new_ratios)
        if np.max(np.abs(new_ratios - ratios)) <= RATIO_TOLERANCE:
            break
        ratios = new_ratios
    return best


def _random_cone_starts(
    d: int, support: tuple[int, ...], count: int, rng: np.random.Generator
) -> np.ndarray:
    starts = np.zeros((count, d))
    columns = list(support)
    off = [j for j in range(d) if j not in support]
    u = rng.standard_normal((count, len(columns)))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    starts[:, columns] = u
    if off:
        v = rng.standard_normal((count, len(off)))
        v /= np.abs(v).sum(axis=1, keepdims=True)
        radius = CONE_FACTOR * np.abs(u).sum(axis=1) * rng.random(count)
        starts[:, off] = v * radius[:, None]
    return starts


def _deterministic_starts(
    matrix: np.ndarray, support: tuple[int, ...]
) -> np.ndarray:
    """좌표 벡터들과 M_SS 최소 고유벡터(β_{Sᶜ} = 0)에서 시작합니다."""
    d = matrix.shape[0]
    columns = list(support)
    starts = np.zeros((len(columns) + 1, d))
    for row, j in enumerate(columns):
        starts[row, j] = 1.0
    _, vectors = np.linalg.eigh(matrix[np.ix_(columns, columns)])
    starts[-1, columns] = vectors[:, 0]
    return starts


def _evaluate(
    matrix: np.ndarray,
    supports: list[tuple[int, ...]],
    starts: list[np.ndarray],
) -> tuple[float, tuple[int, ...]]:
    d = matrix.shape[0]
    rows = np.vstack(starts)
    masks = np.zeros_like(rows)
    owners: list[int] = []
    offset = 0
    for index, (support, block) in enumerate(zip(supports, starts, strict=True)):
        masks[offset : offset + block.shape[0], list(support)] = 1.0
        owners.extend([index] * block.shape[0])
        offset += block.shape[0]
    best = _refine(matrix, rows.reshape(-1, d), masks)
    winner = int(np.argmin(best))
    return float(best[winner]), supports[owners[winner]]


def restricted_eigenvalue_estimate(
    matrix: np.ndarray,
    s: int,
    search_budget: int,
    rng: np.random.Generator,
) -> RestrictedEigenvalueInterval:
    """C_min(M, s)의 구간 [lower, upper]를 추정합니다.

    lower는 σ_min(M)입니다. upper는 무작위로 고른 지지집합과 원뿔 시작점에서의 국소
    탐색 결과이며, d ≤ 12 이고 s ≤ 3 이면 모든 지지집합을 추가로 열거합니다.
    열거 단계는 결정적 시작점에 무작위 탐색이 같은 지지집합에서 쓴 시작점을 더해
    사용하므로 열거 값은 탐색 값보다 크지 않습니다.

    Args:
        matrix: 양의 준정부호 대칭 행렬
        s: 희소도 (1 ≤ s ≤ d)
        search_budget: 무작위 탐색에서 방문할 지지집합 수
        rng: 난수 스트림

    Returns:
        RestrictedEigenvalueInterval: 구간과 최적 지지집합

    Raises:
        ValueError: s가 범위를 벗어나거나 예산이 양수가 아닌 경우
        NonSymmetricMatrixError: 대칭 행렬이 아닌 경우
    """
    matrix = check_symmetric(matrix)
    d = matrix.shape[0]
    if not 1 <= s <= d:
        raise ValueError(f"s={s}는 1 이상 d={d} 이하여야 합니다")
    if search_budget < 1:
        raise ValueError(f"search_budget은 양수여야 합니다: {search_budget}")

    lower = min_eigenvalue(matrix)
    total_supports = math.comb(d, s)

    if total_supports <= search_budget:
        every = list(itertools.combinations(range(d), s))
        order = [every[i] for i in rng.permutation(total_supports)]
        sampled = [order[i % total_supports] for i in range(search_budget)]
    else:
        sampled = [
            tuple(sorted(int(j) for j in rng.choice(d, size=s, replace=False)))
            for _ in range(search_budget)
        ]
    starts_by_support: dict[tuple[int, ...], list[np.ndarray]] = {}
    for support in sampled:
        block = _random_cone_starts(d, support, STARTS_PER_SUPPORT, rng)
        starts_by_support.setdefault(support, []).append(block)
    search_supports = list(starts_by_support)
    search_starts = [np.vstack(starts_by_support[sup]) for sup in search_supports]
    search_upper, best_support = _evaluate(matrix, search_supports, search_starts)

    enumerated_upper: float | None = None
    if d <= ENUMERATION_MAX_DIMENSION and s <= ENUMERATION_MAX_SPARSITY:
        supports = list(itertools.combinations(range(d), s))
        starts = [
            np.vstack(
                [_deterministic_starts(matrix, support)]
                + starts_by_support.get(support, [])
            )
            for support in supports
        ]
        enumerated_upper, enumerated_support = _evaluate(matrix, supports, starts)
        if enumerated_upper < search_upper:
            best_support = enumerated_support

    upper = search_upper
    if enumerated_upper is not None:
        upper = min(search_upper, enumerated_upper)
    upper = max(upper, lower)
    logger.debug(
        f"제한 고유값 구간: d={d}, s={s}, [{lower:.6g}, {upper:.6g}], 지지집합={best_support}"
    )
    return RestrictedEigenvalueInterval(
        lower=lower,
        upper=upper,
        search_upper=search_upper,
        enumerated_upper=enumerated_upper,
        best_support=best_support,
    )
