"""ℓ₂ 벌점 최소제곱 (릿지 기준선용)."""

import numpy as np

from sparserl.src.sparsereg.models import RegressionDataset, RegressionFit


def ridge_fit(data: RegressionDataset, alpha: float) -> RegressionFit:
    """(1/n)Σᵢ(yᵢ − φᵢᵀw)² + α‖w‖₂² 를 정규방정식으로 풉니다.

    α = 0 이고 설계가 특이하면 최소 노름 최소제곱 해를 사용합니다.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha는 0 이상이어야 합니다: {alpha}")
    gram = data.features.T @ data.features / data.n
    rhs = data.features.T @ data.targets / data.n
    system = gram + alpha * np.eye(data.d)
    if alpha > 0.0:
        weights = np.linalg.solve(system, rhs)
    else:
        weights = np.linalg.lstsq(system, rhs, rcond=None)[0]
    residual = data.targets - data.features @ weights
    objective = float(residual @ residual / data.n + alpha * weights @ weights)
    return RegressionFit(weights=weights, converged=True, sweeps=1, objective=objective)
