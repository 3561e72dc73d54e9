"""x_u / x_i 행동 메뉴와 대안 방향 후보 집합.

부호 패턴은 길이 d의 정수 벡터이며 θ 블록 좌표에 그대로 들어갑니다.

- S: 마지막 좌표 0, 나머지는 {−1,0,1}, ℓ₁ 노름 s−1 (x_u 메뉴)
- H: 앞 d−1 좌표 ±1, 마지막 좌표 1 (x_i 메뉴)
- S′: S 중 좌표 0..s−2 와 d−1 이 0인 원소 (대안 방향 z̃ 후보)
"""

import itertools
import math
from collections.abc import Callable, Iterator

import numpy as np
from scipy.linalg import hadamard

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError

ENUMERATION_MAX_DIMENSION = 12
MAX_DRAW_ATTEMPTS = 100_000
MAX_BLOCK_ATTEMPTS = 64

Pattern = tuple[int, ...]


def optimal_a2_pattern(d: int, s: int) -> Pattern:
    """처음 s−1 좌표가 +1 인 S 원소 (φᵀθ = (s−1)ε)."""
    return tuple([1] * (s - 1) + [0] * (d - s + 1))


def _sparse_sign_patterns(d: int, positions: range, weight: int) -> Iterator[Pattern]:
    for support in itertools.combinations(positions, weight):
        for signs in itertools.product((-1, 1), repeat=weight):
            pattern = [0] * d
            for coordinate, sign in zip(support, signs, strict=True):
                pattern[coordinate] = sign
            yield tuple(pattern)


def sparse_sign_patterns(d: int, s: int) -> list[Pattern]:
    """S 전체를 사전순으로 나열합니다."""
    return sorted(_sparse_sign_patterns(d, range(d - 1), s - 1))


def count_sparse_sign_patterns(d: int, s: int) -> int:
    return math.comb(d - 1, s - 1) * 2 ** (s - 1)


def s_prime_positions(d: int, s: int) -> range:
    return range(s - 1, d - 1)


def s_prime_patterns(d: int, s: int) -> list[Pattern]:
    """S′ 전체를 사전순으로 나열합니다."""
    return sorted(_sparse_sign_patterns(d, s_prime_positions(d, s), s - 1))


def count_s_prime_patterns(d: int, s: int) -> int:
    return math.comb(len(s_prime_positions(d, s)), s - 1) * 2 ** (s - 1)


def is_s_prime_member(pattern: np.ndarray, s: int) -> bool:
    pattern = np.asarray(pattern)
    d = pattern.size
    if not np.all(np.isin(pattern, (-1, 0, 1))):
        return False
    if np.any(pattern[: s - 1] != 0) or pattern[d - 1] != 0:
        return False
    return int(np.abs(pattern).sum()) == s - 1


def _random_sparse_sign(
    d: int, positions: range, weight: int, rng: np.random.Generator
) -> Pattern:
    support = rng.choice(
        np.arange(positions.start, positions.stop), size=weight, replace=False
    )
    signs = rng.choice((-1, 1), size=weight)
    pattern = np.zeros(d, dtype=np.int64)
    pattern[support] = signs
    return tuple(int(v) for v in pattern)


def _draw_unique(
    draw: Callable[[], Pattern], size: int, exclude: set[Pattern]
) -> list[Pattern]:
    seen = set(exclude)
    drawn: list[Pattern] = []
    attempts = 0
    while len(drawn) < size and attempts < MAX_DRAW_ATTEMPTS:
        attempts += 1
        pattern = draw()
        if pattern in seen:
            continue
        seen.add(pattern)
        drawn.append(pattern)
    return drawn


def a2_menu(
    d: int,
    s: int,
    cap: int,
    rng: np.random.Generator,
    z_tilde: np.ndarray | None = None,
) -> np.ndarray:
    """x_u 메뉴 (최적 행동이 항상 0번).

    |S| ≤ cap 이면 S 전체, 아니면 시드 샘플입니다. z̃ 가 주어졌는데 메뉴에 없으면
    마지막 샘플 행동을 z̃ 로 바꿉니다. z̃ 가 없을 때의 나머지 메뉴는 z̃ 와 무관합니다.
    """
    optimal = optimal_a2_pattern(d, s)
    if count_sparse_sign_patterns(d, s) <= cap:
        patterns = [optimal] + [p for p in sparse_sign_patterns(d, s) if p != optimal]
    elif d <= ENUMERATION_MAX_DIMENSION:
        pool = [p for p in sparse_sign_patterns(d, s) if p != optimal]
        chosen = np.sort(rng.choice(len(pool), size=cap - 1, replace=False))
        patterns = [optimal] + [pool[i] for i in chosen]
    else:
        patterns = [optimal] + _draw_unique(
            lambda: _random_sparse_sign(d, range(d - 1), s - 1, rng), cap - 1, {optimal}
        )
    if z_tilde is not None:
        target = tuple(int(v) for v in z_tilde)
        if target not in patterns:
            patterns[-1] = target
    return np.array(patterns, dtype=np.int64)


def a3_menu(d: int, cap: int, rng: np.random.Generator) -> np.ndarray:
    """x_i 메뉴: 시드 부호 반전을 준 실베스터 아다마르 블록들을 쌓고 무작위 패턴으로 채웁니다.

    블록마다 θ 블록 열들이 서로 직교하므로, cap이 블록 크기의 배수면
    균등 정책의 θ 블록 공분산은 단위 행렬에 비례합니다.
    """
    if 2 ** (d - 1) <= cap:
        return np.array(
            [list(signs) + [1] for signs in itertools.product((-1, 1), repeat=d - 1)],
            dtype=np.int64,
        )
    size = 1 << (d - 1).bit_length()
    full = hadamard(size)
    block_base = np.concatenate([full[:, 1:d], full[:, :1]], axis=1).astype(np.int64)

    seen: set[Pattern] = set()
    rows: list[Pattern] = []
    rejected = 0
    while len(rows) < cap and rejected < MAX_BLOCK_ATTEMPTS:
        flips = np.append(rng.choice((-1, 1), size=d - 1), 1)
        signed = block_base * flips
        block = list(dict.fromkeys(tuple(int(v) for v in row) for row in signed))
        if any(row in seen for row in block):
            rejected += 1
            continue
        block = block[: cap - len(rows)]
        seen.update(block)
        rows.extend(block)

    def draw() -> Pattern:
        return tuple(int(v) for v in rng.choice((-1, 1), size=d - 1)) + (1,)

    rows.extend(_draw_unique(draw, cap - len(rows), seen))
    return np.array(rows, dtype=np.int64)


def s_prime_candidates(
    d: int, s: int, cap: int, rng: np.random.Generator
) -> np.ndarray:
    """z̃ 후보: d ≤ 12 면 S′ 전체, 아니면 크기 cap의 시드 샘플 (사전순 정렬).

    Raises:
        InvalidInstanceError: S′ 가 비어 있는 경우 (d < 2s−1)
    """
    total = count_s_prime_patterns(d, s)
    if total == 0:
        raise InvalidInstanceError(
            f"d={d}, s={s}에서는 대안 방향 후보 집합이 비어 있습니다 (d ≥ 2s 필요)", "d"
        )
    if d <= ENUMERATION_MAX_DIMENSION or total <= cap:
        candidates = s_prime_patterns(d, s)
    else:
        candidates = sorted(
            _draw_unique(
                lambda: _random_sparse_sign(d, s_prime_positions(d, s), s - 1, rng),
                cap,
                set(),
            )
        )
    return np.array(candidates, dtype=np.int64)
