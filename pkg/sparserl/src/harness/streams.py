"""(master_seed, N, replicate) 로 키를 정한 카운터 기반 난수 스트림."""

import numpy as np


def replicate_seed_sequence(
    master_seed: int, total_episodes: int, replicate: int
) -> np.random.SeedSequence:
    return np.random.SeedSequence(master_seed, spawn_key=(total_episodes, replicate))


def replicate_stream(
    master_seed: int, total_episodes: int, replicate: int
) -> np.random.Generator:
    """복제 실행 하나의 독립 스트림.

    Philox 는 카운터 기반 생성기라 스윕을 다시 돌리지 않고도 복제 실행 하나만
    재현할 수 있습니다.
    """
    sequence = replicate_seed_sequence(master_seed, total_episodes, replicate)
    return np.random.Generator(np.random.Philox(sequence))


def replicate_seed(master_seed: int, total_episodes: int, replicate: int) -> int:
    """매니페스트에 기록할 복제 실행 시드 (스트림 엔트로피에서 파생)."""
    sequence = replicate_seed_sequence(master_seed, total_episodes, replicate)
    state = sequence.generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])
