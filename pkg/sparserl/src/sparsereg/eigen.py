"""대칭 행렬 고유값 계산."""

import numpy as np

from sparserl.src.exceptions.non_symmetric_matrix_error import NonSymmetricMatrixError

SYMMETRY_TOLERANCE = 1e-10


def check_symmetric(
    matrix: np.ndarray, tolerance: float = SYMMETRY_TOLERANCE
) -> np.ndarray:
    """정방 대칭 행렬인지 확인하고 float64 배열로 반환합니다.

    Raises:
        ValueError: 정방 행렬이 아닌 경우
        NonSymmetricMatrixError: 대칭이 아닌 경우
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"정방 행렬이 필요합니다: {matrix.shape}")
    asymmetry = float(np.max(np.abs(matrix - matrix.T))) if matrix.size else 0.0
    if asymmetry > tolerance:
        raise NonSymmetricMatrixError(asymmetry, tolerance)
    return matrix


def min_eigenvalue(matrix: np.ndarray) -> float:
    """대칭 행렬의 가장 작은 고유값을 반환합니다 (LAPACK syevd)."""
    matrix = check_symmetric(matrix)
    return float(np.linalg.eigvalsh(matrix)[0])


def max_eigenvalue(matrix: np.ndarray) -> float:
    matrix = check_symmetric(matrix)
    return float(np.linalg.eigvalsh(matrix)[-1])
