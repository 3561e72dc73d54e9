"""하한(lower bound) 어려운 인스턴스 데이터 모델.

상태는 x₀(시작), x_i(정보 상태), x_u(비정보 상태), x_g(좋은 흡수 상태),
x_b(나쁜 흡수 상태) 순서입니다. 특징 좌표(0부터) 배치:

- 0..d-1: θ 블록 (x_i, x_u 행동의 부호 패턴)
- d: x_g 전용, d+1: x_b 전용
- d+2..2d+1: x₀ 행동 블록 (a_j⁰ 는 d+2+j)
- 2d+2: 상수 좌표
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from sparserl.src.linmdp.models import SparseLinearMDP

X0, XI, XU, XG, XB = range(5)
STATE_LABELS = ("x0", "x_i", "x_u", "x_g", "x_b")


class RewardConvention(str, Enum):
    """보상 규약.

    ARRIVAL: r(x,a) = P(x_g|x,a) (x_g에서는 1)
    STATE: x = x_g 일 때만 r = 1
    """

    ARRIVAL = "arrival"
    STATE = "state"

    @classmethod
    def from_string(cls, value: str) -> "RewardConvention":
        for convention in cls:
            if convention.value == value.lower():
                return convention
        raise ValueError(f"알 수 없는 보상 규약: {value}")


def goal_coordinate(d: int) -> int:
    return d


def bad_coordinate(d: int) -> int:
    return d + 1


def start_coordinate(d: int, action: int) -> int:
    """x₀ 행동 a_{action+1}⁰ 의 특징 좌표."""
    return d + 2 + action


def constant_coordinate(d: int) -> int:
    return 2 * d + 2


def feature_dimension(d: int) -> int:
    return 2 * d + 3


@dataclass(frozen=True, eq=False)
class HardInstance:
    """어려운 인스턴스 M_k (k = 0이면 귀무 인스턴스 M₀) 또는 그 대안 M̃_k.

    Attributes:
        mdp: 시뮬레이션 가능한 희소 선형 MDP
        d: 주변 차원
        s: 희소도 파라미터
        k: 정보 상태로 가는 x₀ 행동 번호 (1..d, 0은 M₀)
        epsilon: ε
        action_cap: A₂/A₃ 메뉴 최대 크기
        seed: 메뉴 샘플링 시드
        theta: θ ∈ R^d
        a2_patterns: x_u 메뉴의 부호 패턴 (|A₂|, d), 클램프 전
        a3_patterns: x_i 메뉴의 부호 패턴 (|A₃|, d)
        clamped: x_u 행동별 P(x_g)=0 클램프 여부
        reward_convention: 보상 규약
        z_tilde: 대안 방향 z̃ (연결된 경우)
        is_alternative: True면 전이에 θ̃ = θ + 2ε·z̃ 를 사용
    """

    mdp: SparseLinearMDP
    d: int
    s: int
    k: int
    epsilon: float
    action_cap: int
    seed: int
    theta: np.ndarray
    a2_patterns: np.ndarray
    a3_patterns: np.ndarray
    clamped: np.ndarray
    reward_convention: RewardConvention = RewardConvention.ARRIVAL
    z_tilde: np.ndarray | None = None
    is_alternative: bool = False

    @property
    def horizon(self) -> int:
        return self.mdp.horizon

    @property
    def feature_dimension(self) -> int:
        return self.mdp.d

    @property
    def theta_tilde(self) -> np.ndarray | None:
        if self.z_tilde is None:
            return None
        return self.theta + 2.0 * self.epsilon * self.z_tilde

    @property
    def transition_parameter(self) -> np.ndarray:
        """전이에 실제로 쓰이는 파라미터 (θ 또는 θ̃)."""
        if self.is_alternative and self.theta_tilde is not None:
            return self.theta_tilde
        return self.theta

    @property
    def kl_bound(self) -> float:
        """8ε²(s−1)²."""
        return 8.0 * self.epsilon**2 * (self.s - 1) ** 2

    def x_u_pair(self, action: int) -> int:
        return self.mdp.pair_index(XU, action)

    def pattern_index(self, pattern: np.ndarray) -> int | None:
        """x_u 메뉴에서 부호 패턴이 같은 행동 번호."""
        same = np.all(self.a2_patterns == np.asarray(pattern), axis=1)
        matches = np.flatnonzero(same)
        return int(matches[0]) if matches.size else None

    def sidecar(self) -> dict[str, Any]:
        """인스턴스 파일의 hard_instance 사이드카 블록."""
        return {
            "d": self.d,
            "s": self.s,
            "k": self.k,
            "epsilon": self.epsilon,
            "action_cap": self.action_cap,
            "seed": self.seed,
            "reward_convention": self.reward_convention.value,
            "z_tilde": None if self.z_tilde is None else self.z_tilde.tolist(),
            "alternative": self.is_alternative,
            "clamped_actions": np.flatnonzero(self.clamped).tolist(),
            "menu_extension": "x0/x_i/x_u menus are per-state; no out-of-menu actions",
        }


@dataclass(frozen=True)
class KLResult:
    """M_k 대 M̃_k 단계별 KL 결과.

    Attributes:
        contributions: trace 행(단계)별 KL 기여
        total: 합계 (infinite이면 inf)
        bound: 8ε²(s−1)²
        infinite: 한쪽에서만 확률 0/1 인 행동에 질량이 있는 경우
        bound_applies: ε ≤ 1/(10(s−1)) 인지
        excluded_actions: 클램프로 제외한 x_u 행동
        unmatched_actions: 대안 메뉴에 같은 패턴이 없는 행동
    """

    contributions: tuple[float, ...]
    total: float
    bound: float
    infinite: bool
    bound_applies: bool
    excluded_actions: tuple[int, ...] = ()
    unmatched_actions: tuple[int, ...] = ()

    @property
    def within_bound(self) -> bool:
        return not self.infinite and self.total <= self.bound + 1e-9


@dataclass(frozen=True)
class HardDiagnostics:
    """어려운 인스턴스 실행 진단.

    Attributes:
        tau: 정지 시점 τ_k (1..N)
        event_d: 사건 D_k 지시자
        visitation_sum: τ_k 이전 Σₙ Σ_{j≤s−1} z_j(A₂ⁿ), 클램프 전 패턴 기준
        threshold: τ_k·s/2
        kl: 대안이 주어진 경우 에피소드 1..τ_k−1 의 KL 결과
    """

    tau: int
    event_d: bool
    visitation_sum: float
    threshold: float
    kl: KLResult | None = None
