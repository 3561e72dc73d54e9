"""희소 선형 MDP, 정책, 궤적 데이터 모델.

단계(step) 인덱스는 코드 전체에서 0부터 시작합니다 (h = 0..H-1).
상태-행동 쌍은 상태 순서대로, 상태 안에서는 행동 인덱스 순서대로 평탄화됩니다.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Protocol

import numpy as np

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.exceptions.policy_coverage_error import PolicyCoverageError
from sparserl.src.linmdp.feature_map import FeatureMap

POLICY_ROW_TOLERANCE = 1e-12


def _frozen_array(values: object, dtype: type = np.float64) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SparseLinearMDP:
    """유한 에피소드형 희소 선형 MDP.

    전이 커널은 P(x'|x,a) = Σ_{k∈K} φ_k(x,a)·ψ_k(x') 로 분해되며, 샘플링 속도를 위해
    전이 테이블도 함께 보관합니다. 테이블을 직접 주지 않으면 분해로부터 계산합니다.
    확률 유효성은 생성 시 검사하지 않고 `validate_mdp`가 보고합니다.

    Attributes:
        feature_map: 쌍별 특징 벡터
        factors: ψ, 모양 (|K|, 상태 수), 행 순서는 active_set 순서
        active_set: 활성 좌표 K (0부터 시작하는 특징 인덱스)
        sparsity: 선언된 희소도 s
        horizon: 에피소드 길이 H
        rewards: 쌍별 보상 r(x,a)
        initial_distribution: 초기 상태 분포 ξ₀
        actions_per_state: 상태별 행동 메뉴 크기
        state_labels: 상태 이름 (없으면 번호)
        transitions: 쌍별 다음 상태 분포 테이블, 모양 (쌍 수, 상태 수)
    """

    feature_map: FeatureMap
    factors: np.ndarray
    active_set: tuple[int, ...]
    sparsity: int
    horizon: int
    rewards: np.ndarray
    initial_distribution: np.ndarray
    actions_per_state: tuple[int, ...]
    state_labels: tuple[str, ...] = ()
    transitions: np.ndarray | None = None

    def __post_init__(self) -> None:
        actions = tuple(int(n) for n in self.actions_per_state)
        if not actions or min(actions) < 1:
            raise InvalidInstanceError(
                "모든 상태는 최소 한 개의 행동을 가져야 합니다", "actions_per_state"
            )
        n_states = len(actions)
        n_pairs = sum(actions)
        if self.feature_map.n_pairs != n_pairs:
            raise InvalidInstanceError(
                f"특징 행 수 {self.feature_map.n_pairs}가 쌍 수 {n_pairs}와 다릅니다",
                "phi",
            )
        if self.horizon < 1:
            raise InvalidInstanceError(f"horizon은 양수여야 합니다: {self.horizon}", "H")
        if self.sparsity < 1:
            raise InvalidInstanceError(f"희소도는 양수여야 합니다: {self.sparsity}", "s")

        active = tuple(int(k) for k in self.active_set)
        if any(k < 0 or k >= self.feature_map.d for k in active):
            raise InvalidInstanceError(
                f"활성 좌표가 특징 차원 {self.feature_map.d} 범위를 벗어납니다: {active}",
                "active_set",
            )
        if len(set(active)) != len(active):
            raise InvalidInstanceError(f"활성 좌표가 중복됩니다: {active}", "active_set")

        factors = np.array(self.factors, dtype=np.float64, copy=True)
        if factors.ndim == 1 and len(active) == 0:
            factors = factors.reshape(0, n_states)
        if factors.shape != (len(active), n_states):
            raise InvalidInstanceError(
                f"ψ 모양 {factors.shape}이 (|K|, 상태 수) = "
                f"({len(active)}, {n_states})와 다릅니다",
                "psi",
            )
        rewards = np.array(self.rewards, dtype=np.float64, copy=True)
        if rewards.shape != (n_pairs,):
            raise InvalidInstanceError(
                f"보상 길이 {rewards.shape}가 쌍 수 {n_pairs}와 다릅니다", "rewards"
            )
        xi0 = np.array(self.initial_distribution, dtype=np.float64, copy=True)
        if xi0.shape != (n_states,):
            raise InvalidInstanceError(
                f"초기 분포 길이 {xi0.shape}가 상태 수 {n_states}와 다릅니다", "xi0"
            )
        labels = tuple(self.state_labels) or tuple(str(x) for x in range(n_states))
        if len(labels) != n_states:
            raise InvalidInstanceError("상태 이름 수가 상태 수와 다릅니다", "states")

        if self.transitions is None:
            table = self.feature_map.table[:, list(active)] @ factors
        else:
            table = np.array(self.transitions, dtype=np.float64, copy=True)
            if table.shape != (n_pairs, n_states):
                raise InvalidInstanceError(
                    f"전이 테이블 모양 {table.shape}이 ({n_pairs}, {n_states})와 다릅니다",
                    "transitions",
                )

        factors.setflags(write=False)
        rewards.setflags(write=False)
        xi0.setflags(write=False)
        table.setflags(write=False)
        object.__setattr__(self, "actions_per_state", actions)
        object.__setattr__(self, "active_set", active)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "rewards", rewards)
        object.__setattr__(self, "initial_distribution", xi0)
        object.__setattr__(self, "state_labels", labels)
        object.__setattr__(self, "transitions", table)

    @property
    def d(self) -> int:
        return self.feature_map.d

    @property
    def n_states(self) -> int:
        return len(self.actions_per_state)

    @property
    def n_pairs(self) -> int:
        return self.feature_map.n_pairs

    @property
    def phi(self) -> np.ndarray:
        return self.feature_map.table

    @property
    def transition_table(self) -> np.ndarray:
        assert self.transitions is not None
        return self.transitions

    @cached_property
    def pair_offsets(self) -> np.ndarray:
        """상태 x의 쌍은 offsets[x]..offsets[x+1]-1 입니다."""
        offsets = np.zeros(self.n_states + 1, dtype=np.int64)
        offsets[1:] = np.cumsum(self.actions_per_state)
        offsets.setflags(write=False)
        return offsets

    @cached_property
    def pair_states(self) -> np.ndarray:
        states = np.repeat(np.arange(self.n_states), self.actions_per_state)
        states.setflags(write=False)
        return states

    @cached_property
    def pair_actions(self) -> np.ndarray:
        actions = np.arange(self.n_pairs) - self.pair_offsets[self.pair_states]
        actions.setflags(write=False)
        return actions

    @cached_property
    def transition_cdf(self) -> np.ndarray:
        cdf = np.cumsum(np.clip(self.transition_table, 0.0, None), axis=1)
        cdf.setflags(write=False)
        return cdf

    @cached_property
    def initial_cdf(self) -> np.ndarray:
        cdf = np.cumsum(np.clip(self.initial_distribution, 0.0, None))
        cdf.setflags(write=False)
        return cdf

    def pair_index(self, state: int, action: int) -> int:
        """(상태, 행동)의 평탄화된 쌍 인덱스를 반환합니다.

        Raises:
            IndexError: 상태 또는 행동이 메뉴 밖인 경우
        """
        if not 0 <= state < self.n_states:
            raise IndexError(f"상태 {state}가 범위를 벗어납니다")
        if not 0 <= action < self.actions_per_state[state]:
            raise IndexError(f"상태 {state}에 행동 {action}이 없습니다")
        return int(self.pair_offsets[state]) + action

    def factored_transitions(self) -> np.ndarray:
        """φ_K ψ 분해로부터 전이 테이블을 다시 계산합니다."""
        return self.phi[:, list(self.active_set)] @ self.factors

    def state_index(self, label: str) -> int:
        return self.state_labels.index(label)


class Policy(Protocol):
    """DP와 시뮬레이터가 사용하는 정책 인터페이스."""

    def pair_weights(self, mdp: SparseLinearMDP, step: int) -> np.ndarray:
        """단계 step에서 쌍별 행동 확률을 평탄화한 벡터를 반환합니다."""
        ...

    def act(
        self,
        mdp: SparseLinearMDP,
        step: int,
        state: int,
        rng: np.random.Generator,
    ) -> int:
        """단계 step, 상태 state에서 행동을 선택합니다."""
        ...


@dataclass(frozen=True, eq=False)
class StationaryPolicy:
    """상태별 행동 분포로 정의되는 정상(stationary) 정책.

    행이 None인 상태는 정의되지 않은 상태이며, 그 상태에서 행동을 요구하면
    PolicyCoverageError가 발생합니다.
    """

    rows: tuple[np.ndarray | None, ...]

    def __post_init__(self) -> None:
        frozen_rows: list[np.ndarray | None] = []
        for state, row in enumerate(self.rows):
            if row is None:
                frozen_rows.append(None)
                continue
            probs = _frozen_array(row)
            if probs.ndim != 1 or probs.size == 0:
                raise InvalidInstanceError(f"상태 {state}의 정책 행이 비어 있습니다")
            if np.any(probs < 0.0):
                raise InvalidInstanceError(f"상태 {state}의 정책 행에 음수가 있습니다")
            if abs(float(probs.sum()) - 1.0) > POLICY_ROW_TOLERANCE:
                raise InvalidInstanceError(
                    f"상태 {state}의 정책 행 합이 1이 아닙니다: {probs.sum():.17g}"
                )
            frozen_rows.append(probs)
        object.__setattr__(self, "rows", tuple(frozen_rows))

    @classmethod
    def uniform(cls, mdp: SparseLinearMDP) -> "StationaryPolicy":
        """모든 상태에서 메뉴 위 균등 분포를 따르는 정책."""
        return cls(tuple(np.full(n, 1.0 / n) for n in mdp.actions_per_state))

    @classmethod
    def deterministic(
        cls, mdp: SparseLinearMDP, actions: Sequence[int]
    ) -> "StationaryPolicy":
        """상태별로 한 행동만 고르는 결정적 정책."""
        if len(actions) != mdp.n_states:
            raise InvalidInstanceError("결정적 정책의 행동 수가 상태 수와 다릅니다")
        rows = []
        for n_actions, action in zip(mdp.actions_per_state, actions, strict=True):
            row = np.zeros(n_actions)
            row[action] = 1.0
            rows.append(row)
        return cls(tuple(rows))

    def distribution(self, state: int) -> np.ndarray:
        row = self.rows[state] if state < len(self.rows) else None
        if row is None:
            raise PolicyCoverageError(state)
        return row

    def pair_weights(
        self,
        mdp: SparseLinearMDP,
        step: int = 0,  # noqa: ARG002
    ) -> np.ndarray:
        weights = np.empty(mdp.n_pairs)
        for state in range(mdp.n_states):
            row = self.distribution(state)
            start, stop = mdp.pair_offsets[state], mdp.pair_offsets[state + 1]
            if row.size != stop - start:
                raise InvalidInstanceError(
                    f"상태 {state}의 정책 행 길이 {row.size}가 메뉴 크기 "
                    f"{stop - start}와 다릅니다"
                )
            weights[start:stop] = row
        return weights

    def act(
        self,
        mdp: SparseLinearMDP,  # noqa: ARG002
        step: int,  # noqa: ARG002
        state: int,
        rng: np.random.Generator,
    ) -> int:
        row = self.distribution(state)
        action = int(np.searchsorted(np.cumsum(row), rng.random(), side="right"))
        return min(action, row.size - 1)

    def mix(self, other: "StationaryPolicy", weight: float) -> "StationaryPolicy":
        """(1-weight)·self + weight·other 상태별 혼합 정책."""
        rows = []
        for mine, theirs in zip(self.rows, other.rows, strict=True):
            if mine is None or theirs is None:
                rows.append(None)
                continue
            mixed = (1.0 - weight) * mine + weight * theirs
            rows.append(mixed / mixed.sum())
        return StationaryPolicy(tuple(rows))


@dataclass(frozen=True, eq=False)
class NonstationaryPolicy:
    """단계별·상태별로 한 행동을 고르는 결정적 비정상 정책 (탐욕 정책)."""

    actions: np.ndarray

    def __post_init__(self) -> None:
        actions = _frozen_array(self.actions, dtype=np.int64)
        if actions.ndim != 2:
            raise InvalidInstanceError("비정상 정책은 (H, 상태 수) 행동 배열이어야 합니다")
        object.__setattr__(self, "actions", actions)

    @property
    def horizon(self) -> int:
        return int(self.actions.shape[0])

    def action(self, step: int, state: int) -> int:
        return int(self.actions[step, state])

    def pair_weights(self, mdp: SparseLinearMDP, step: int) -> np.ndarray:
        if self.actions.shape[1] != mdp.n_states:
            raise PolicyCoverageError(min(self.actions.shape[1], mdp.n_states))
        weights = np.zeros(mdp.n_pairs)
        weights[mdp.pair_offsets[:-1] + self.actions[step]] = 1.0
        return weights

    def act(
        self,
        mdp: SparseLinearMDP,  # noqa: ARG002
        step: int,
        state: int,
        rng: np.random.Generator,  # noqa: ARG002
    ) -> int:
        if state >= self.actions.shape[1]:
            raise PolicyCoverageError(state)
        return self.action(step, state)


class Phase(str, Enum):
    """에피소드 단계 태그."""

    EXPLORE = "explore"
    EXPLOIT = "exploit"
    BASELINE = "baseline"

    @classmethod
    def from_string(cls, value: str) -> "Phase":
        for phase in cls:
            if phase.value == value.lower():
                return phase
        raise ValueError(f"알 수 없는 단계 태그: {value}")


@dataclass(frozen=True)
class Transition:
    """한 단계 전이 (x_h, a_h, r_h, x_{h+1}). 행동은 상태 메뉴 안 인덱스입니다."""

    state: int
    action: int
    reward: float
    next_state: int


@dataclass(frozen=True)
class Trajectory:
    """길이 H의 에피소드 기록."""

    episode: int
    steps: tuple[Transition, ...]
    phase: Phase = Phase.BASELINE

    @property
    def initial_state(self) -> int:
        return self.steps[0].state

    @property
    def total_reward(self) -> float:
        return float(sum(step.reward for step in self.steps))

    def __len__(self) -> int:
        return len(self.steps)
