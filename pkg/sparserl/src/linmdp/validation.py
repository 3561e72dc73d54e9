"""희소 선형 MDP 불변식 검증 모듈.

위반 사항은 예외가 아니라 데이터(ValidationReport)로 반환됩니다.
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict

from sparserl.src.linmdp.feature_map import SUP_NORM_TOLERANCE
from sparserl.src.linmdp.models import SparseLinearMDP

ROW_SUM_TOLERANCE = 1e-9
PROBABILITY_TOLERANCE = 1e-9
TABLE_TOLERANCE = 1e-9
INITIAL_SUM_TOLERANCE = 1e-12


class ViolationKind(str, Enum):
    """불변식 위반 종류."""

    FEATURE_SUP_NORM = "feature_sup_norm"
    SPARSITY = "sparsity"
    ROW_SUM = "row_sum"
    PROBABILITY_RANGE = "probability_range"
    TABLE_MISMATCH = "table_mismatch"
    INITIAL_DISTRIBUTION = "initial_distribution"
    REWARD_RANGE = "reward_range"


class Violation(BaseModel):
    """위치 정보를 포함한 단일 위반 항목."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: ViolationKind
    location: str
    detail: str


class ValidationReport(BaseModel):
    """validate_mdp 결과. 위반 목록이 비어 있으면 유효한 인스턴스입니다."""

    model_config = ConfigDict(extra="forbid")

    violations: list[Violation] = []

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def count(self, kind: ViolationKind) -> int:
        return sum(1 for violation in self.violations if violation.kind == kind)

    def lines(self) -> list[str]:
        return [f"[{v.kind.value}] {v.location}: {v.detail}" for v in self.violations]


def _pair_location(mdp: SparseLinearMDP, pair: int) -> str:
    state = int(mdp.pair_states[pair])
    action = int(mdp.pair_actions[pair])
    return f"pair {pair} (state={mdp.state_labels[state]}, action={action})"


def validate_mdp(mdp: SparseLinearMDP) -> ValidationReport:
    """인스턴스의 모든 불변식을 검사하고 위반 목록을 반환합니다.

    Args:
        mdp: 검사할 인스턴스

    Returns:
        ValidationReport: 위반 목록 (유효하면 비어 있음)
    """
    violations: list[Violation] = []

    sup_norm = mdp.feature_map.sup_norm
    if sup_norm > 1.0 + SUP_NORM_TOLERANCE:
        violations.append(
            Violation(
                kind=ViolationKind.FEATURE_SUP_NORM,
                location="phi",
                detail=f"max |φ| = {sup_norm:.17g} > 1",
            )
        )

    if len(mdp.active_set) > mdp.sparsity:
        violations.append(
            Violation(
                kind=ViolationKind.SPARSITY,
                location="active_set",
                detail=f"|K| = {len(mdp.active_set)} > s = {mdp.sparsity}",
            )
        )

    factored = mdp.factored_transitions()
    row_sums = factored.sum(axis=1)
    for pair in np.flatnonzero(np.abs(row_sums - 1.0) > ROW_SUM_TOLERANCE):
        violations.append(
            Violation(
                kind=ViolationKind.ROW_SUM,
                location=_pair_location(mdp, int(pair)),
                detail=f"Σ_x' P(x'|x,a) = {row_sums[pair]:.17g}",
            )
        )

    out_of_range = (factored < -PROBABILITY_TOLERANCE) | (
        factored > 1.0 + PROBABILITY_TOLERANCE
    )
    for pair, next_state in zip(*np.nonzero(out_of_range), strict=True):
        violations.append(
            Violation(
                kind=ViolationKind.PROBABILITY_RANGE,
                location=(
                    f"{_pair_location(mdp, int(pair))} -> "
                    f"{mdp.state_labels[int(next_state)]}"
                ),
                detail=f"P = {factored[pair, next_state]:.17g}",
            )
        )

    mismatch = np.max(np.abs(mdp.transition_table - factored), axis=1)
    for pair in np.flatnonzero(mismatch > TABLE_TOLERANCE):
        violations.append(
            Violation(
                kind=ViolationKind.TABLE_MISMATCH,
                location=_pair_location(mdp, int(pair)),
                detail=f"max |table - φψ| = {mismatch[pair]:.3e}",
            )
        )

    xi0 = mdp.initial_distribution
    if np.any(xi0 < 0.0) or abs(float(xi0.sum()) - 1.0) > INITIAL_SUM_TOLERANCE:
        violations.append(
            Violation(
                kind=ViolationKind.INITIAL_DISTRIBUTION,
                location="xi0",
                detail=f"Σ ξ₀ = {xi0.sum():.17g}, min = {xi0.min():.17g}",
            )
        )

    bad_rewards = (mdp.rewards < 0.0) | (mdp.rewards > 1.0)
    for pair in np.flatnonzero(bad_rewards):
        violations.append(
            Violation(
                kind=ViolationKind.REWARD_RANGE,
                location=_pair_location(mdp, int(pair)),
                detail=f"r = {mdp.rewards[pair]:.17g}",
            )
        )

    return ValidationReport(violations=violations)
