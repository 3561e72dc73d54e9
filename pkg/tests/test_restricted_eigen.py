"""제한 최소 고유값 구간 추정과 대칭 고유값 유틸리티 테스트"""

import math

import numpy as np
import pytest

from sparserl.src.exceptions.non_symmetric_matrix_error import NonSymmetricMatrixError
from sparserl.src.sparsereg.eigen import check_symmetric, max_eigenvalue, min_eigenvalue
from sparserl.src.sparsereg.restricted_eigen import (
    project_rows_onto_l1_ball,
    restricted_eigenvalue_estimate,
)


def _wishart(seed: int, d: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4 * d, d))
    matrix = g.T @ g / (4 * d) + 0.5 * np.eye(d)
    return 0.5 * (matrix + matrix.T)


class TestEigen:
    """check_symmetric / min_eigenvalue 테스트"""

    def test_min_and_max(self) -> None:
        matrix = np.diag([3.0, 1.0, 2.0])

        assert min_eigenvalue(matrix) == pytest.approx(1.0)
        assert max_eigenvalue(matrix) == pytest.approx(3.0)

    def test_non_symmetric(self) -> None:
        with pytest.raises(NonSymmetricMatrixError) as exc_info:
            min_eigenvalue(np.array([[1.0, 0.5], [0.0, 1.0]]))
        assert exc_info.value.asymmetry == pytest.approx(0.5)

    def test_non_square(self) -> None:
        with pytest.raises(ValueError):
            check_symmetric(np.zeros((2, 3)))


class TestL1Projection:
    """ℓ₁ 공 투영 테스트"""

    def test_inside_rows_are_unchanged(self) -> None:
        rows = np.array([[0.2, -0.3]])

        projected = project_rows_onto_l1_ball(rows, np.array([1.0]))

        np.testing.assert_array_equal(projected, rows)

    def test_outside_rows_land_on_boundary(self) -> None:
        rows = np.array([[3.0, -1.0, 0.5], [0.0, 4.0, 0.0]])

        projected = project_rows_onto_l1_ball(rows, np.array([2.0, 1.0]))

        np.testing.assert_allclose(np.abs(projected).sum(axis=1), [2.0, 1.0])
        np.testing.assert_allclose(projected[0], [2.0, 0.0, 0.0])
        np.testing.assert_allclose(projected[1], [0.0, 1.0, 0.0])


class TestRestrictedEigenvalue:
    """restricted_eigenvalue_estimate 테스트"""

    def test_identity(self, rng) -> None:
        """항등 행렬의 C_min 은 정확히 1 인지 테스트"""
        interval = restricted_eigenvalue_estimate(np.eye(5), 2, 20, rng)

        assert interval.lower == pytest.approx(1.0)
        assert interval.upper == pytest.approx(1.0, abs=1e-9)
        assert len(interval.best_support) == 2

    def test_correlated_pair_closed_form(self, rng) -> None:
        """[[1,ρ],[ρ,1]], s=1 에서 C_min = 1−ρ² 이고 σ_min = 1−ρ 인지 테스트"""
        rho = 0.5
        matrix = np.array([[1.0, rho], [rho, 1.0]])

        interval = restricted_eigenvalue_estimate(matrix, 1, 4, rng)

        assert interval.lower == pytest.approx(1.0 - rho)
        assert interval.enumerated_upper == pytest.approx(1.0 - rho**2, abs=1e-6)
        assert interval.upper == pytest.approx(1.0 - rho**2, abs=1e-6)
        assert interval.width == pytest.approx(rho - rho**2, abs=1e-6)

    @pytest.mark.parametrize("seed", range(20))
    def test_search_agrees_with_enumeration(self, seed) -> None:
        """예산이 지지집합 수의 두 배 이상이면 탐색과 열거 상한이 일치하는지 테스트"""
        d, s = 5 + seed % 4, 2 + seed % 2
        matrix = _wishart(seed, d)
        budget = 2 * math.comb(d, s)

        interval = restricted_eigenvalue_estimate(
            matrix, s, budget, np.random.default_rng(seed)
        )

        assert interval.enumerated_upper is not None
        assert interval.enumerated_upper <= interval.search_upper
        assert interval.search_upper == pytest.approx(
            interval.enumerated_upper, abs=1e-6
        )
        assert interval.lower <= interval.upper + 1e-12
        assert interval.lower == min_eigenvalue(matrix)

    def test_no_enumeration_for_large_dimension(self, rng) -> None:
        interval = restricted_eigenvalue_estimate(_wishart(3, 14), 2, 10, rng)

        assert interval.enumerated_upper is None
        assert interval.upper == interval.search_upper
        assert interval.upper >= interval.lower

    def test_same_stream_same_estimate(self) -> None:
        matrix = _wishart(4, 6)

        first = restricted_eigenvalue_estimate(matrix, 2, 10, np.random.default_rng(9))
        second = restricted_eigenvalue_estimate(matrix, 2, 10, np.random.default_rng(9))

        assert first.search_upper == second.search_upper
        assert first.best_support == second.best_support

    @pytest.mark.parametrize("s,budget", [(0, 10), (7, 10), (2, 0)])
    def test_invalid_arguments(self, rng, s, budget) -> None:
        with pytest.raises(ValueError):
            restricted_eigenvalue_estimate(np.eye(6), s, budget, rng)

    def test_rejects_non_symmetric(self, rng) -> None:
        with pytest.raises(NonSymmetricMatrixError):
            restricted_eigenvalue_estimate(np.array([[1.0, 1.0], [0.0, 1.0]]), 1, 1, rng)
