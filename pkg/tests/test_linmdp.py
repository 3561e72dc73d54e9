"""희소 선형 MDP 모델, 검증, 시뮬레이션, 직렬화 테스트"""

import json

import numpy as np
import pytest

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.exceptions.policy_coverage_error import PolicyCoverageError
from sparserl.src.linmdp.feature_map import FeatureMap, build_tabular_feature_map
from sparserl.src.linmdp.generators import (
    make_random_sparse_mdp,
    make_random_tabular_mdp,
    make_tabular_mdp,
)
from sparserl.src.linmdp.models import (
    NonstationaryPolicy,
    Phase,
    SparseLinearMDP,
    StationaryPolicy,
)
from sparserl.src.linmdp.serialization import dump_instance, load_instance
from sparserl.src.linmdp.simulation import sample_episode, sample_initial_states
from sparserl.src.linmdp.validation import ViolationKind, validate_mdp


def _example_kwargs(**overrides) -> dict:
    kwargs = {
        "feature_map": FeatureMap([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.5, 0.25]]),
        "factors": [[0.8, 0.2], [0.1, 0.9]],
        "active_set": (0, 1),
        "sparsity": 2,
        "horizon": 3,
        "rewards": [0.0, 1.0, 0.5],
        "initial_distribution": [1.0, 0.0],
        "actions_per_state": (2, 1),
    }
    kwargs.update(overrides)
    return kwargs


class TestFeatureMap:
    """FeatureMap 생성 검증 테스트"""

    def test_rejects_sup_norm_above_one(self) -> None:
        """특징 항목의 절댓값이 1을 넘으면 거부하는지 테스트"""
        with pytest.raises(InvalidInstanceError) as exc_info:
            FeatureMap([[0.5, 1.5]])
        assert exc_info.value.field == "phi"

    def test_rejects_non_finite_values(self) -> None:
        with pytest.raises(InvalidInstanceError):
            FeatureMap([[np.nan, 0.0]])

    def test_table_is_read_only(self) -> None:
        feature_map = FeatureMap([[1.0, -1.0]])
        with pytest.raises(ValueError):
            feature_map.table[0, 0] = 0.5

    def test_tabular_feature_map_is_identity(self) -> None:
        """원-핫 특징 맵의 쌍 (x, a) 인덱스가 x * |A| + a 인지 테스트"""
        feature_map = build_tabular_feature_map(2, 3)
        assert feature_map.d == 6
        assert feature_map.n_pairs == 6
        np.testing.assert_array_equal(feature_map.vector(4), np.eye(6)[4])


class TestSparseLinearMDP:
    """SparseLinearMDP 모델 테스트"""

    def test_example_resource_is_valid(self, example_mdp) -> None:
        """패키지 예제 인스턴스가 모든 불변식을 통과하는지 테스트"""
        report = validate_mdp(example_mdp)

        assert report.is_valid, report.lines()
        assert example_mdp.d == 3
        assert example_mdp.n_states == 2
        assert example_mdp.n_pairs == 3
        assert example_mdp.state_labels == ("left", "right")

    def test_transitions_follow_factorization(self, example_mdp) -> None:
        """전이 테이블이 φ_K ψ 분해와 같은지 테스트"""
        np.testing.assert_allclose(
            example_mdp.transition_table,
            [[0.8, 0.2], [0.1, 0.9], [0.45, 0.55]],
        )

    def test_pair_layout(self, example_mdp) -> None:
        """쌍 평탄화가 상태 우선 순서인지 테스트"""
        np.testing.assert_array_equal(example_mdp.pair_offsets, [0, 2, 3])
        np.testing.assert_array_equal(example_mdp.pair_states, [0, 0, 1])
        np.testing.assert_array_equal(example_mdp.pair_actions, [0, 1, 0])
        assert example_mdp.pair_index(1, 0) == 2

    @pytest.mark.parametrize("state,action", [(0, 2), (1, 1), (2, 0), (-1, 0)])
    def test_pair_index_out_of_menu(self, example_mdp, state, action) -> None:
        with pytest.raises(IndexError):
            example_mdp.pair_index(state, action)

    def test_rejects_mismatched_feature_rows(self) -> None:
        """특징 행 수와 메뉴 크기 합이 다르면 거부하는지 테스트"""
        with pytest.raises(InvalidInstanceError):
            SparseLinearMDP(**_example_kwargs(actions_per_state=(2, 2)))

    def test_rejects_active_set_outside_dimension(self) -> None:
        with pytest.raises(InvalidInstanceError) as exc_info:
            SparseLinearMDP(**_example_kwargs(active_set=(0, 3)))
        assert exc_info.value.field == "active_set"

    def test_rejects_empty_menu(self) -> None:
        with pytest.raises(InvalidInstanceError):
            SparseLinearMDP(**_example_kwargs(actions_per_state=(3, 0)))

    def test_state_index_by_label(self, example_mdp) -> None:
        assert example_mdp.state_index("right") == 1


class TestValidateMDP:
    """validate_mdp 위반 보고 테스트"""

    def test_reports_row_sum_violations(self) -> None:
        """ψ 행 합이 1이 아니면 영향받는 쌍마다 위반을 보고하는지 테스트"""
        mdp = SparseLinearMDP(**_example_kwargs(factors=[[0.8, 0.3], [0.1, 0.9]]))

        report = validate_mdp(mdp)

        assert not report.is_valid
        assert report.count(ViolationKind.ROW_SUM) == 2
        assert any("pair 0" in line for line in report.lines())

    def test_reports_sparsity_violation(self) -> None:
        mdp = SparseLinearMDP(
            **_example_kwargs(
                active_set=(0, 1, 2),
                factors=[[0.8, 0.2], [0.1, 0.9], [0.0, 0.0]],
            )
        )

        report = validate_mdp(mdp)

        assert report.count(ViolationKind.SPARSITY) == 1

    def test_reports_reward_and_initial_distribution(self) -> None:
        mdp = SparseLinearMDP(
            **_example_kwargs(
                rewards=[0.0, 1.5, 0.5], initial_distribution=[0.5, 0.6]
            )
        )

        report = validate_mdp(mdp)

        assert report.count(ViolationKind.REWARD_RANGE) == 1
        assert report.count(ViolationKind.INITIAL_DISTRIBUTION) == 1

    def test_reports_negative_probability(self) -> None:
        """음수 전이 확률을 PROBABILITY_RANGE 로 보고하는지 테스트"""
        mdp = SparseLinearMDP(**_example_kwargs(factors=[[1.2, -0.2], [0.1, 0.9]]))

        report = validate_mdp(mdp)

        assert report.count(ViolationKind.PROBABILITY_RANGE) >= 1
        assert report.count(ViolationKind.ROW_SUM) == 0

    def test_reports_table_mismatch(self) -> None:
        """직접 넘긴 전이 테이블이 분해와 다르면 보고하는지 테스트"""
        mdp = SparseLinearMDP(
            **_example_kwargs(transitions=[[0.8, 0.2], [0.1, 0.9], [0.5, 0.5]])
        )

        report = validate_mdp(mdp)

        assert report.count(ViolationKind.TABLE_MISMATCH) == 1


class TestGenerators:
    """인스턴스 생성기 테스트"""

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_random_sparse_mdp_is_valid(self, seed) -> None:
        """무작위 희소 MDP가 검증을 통과하고 활성 좌표가 s개인지 테스트"""
        mdp = make_random_sparse_mdp(
            num_states=8, num_actions=3, d=30, s=4, horizon=4, seed=seed
        )

        assert validate_mdp(mdp).is_valid
        assert len(mdp.active_set) == 4
        assert mdp.sparsity == 4
        inactive = [k for k in range(30) if k not in mdp.active_set]
        assert np.all(mdp.phi[:, inactive] == 0.0)

    def test_nuisance_features_keep_transitions(self) -> None:
        """잡음 특징이 전이 확률을 바꾸지 않는지 테스트"""
        plain = make_random_sparse_mdp(5, 2, 20, 3, 3, seed=9)
        noisy = make_random_sparse_mdp(5, 2, 20, 3, 3, seed=9, nuisance_scale=0.5)

        assert validate_mdp(noisy).is_valid
        np.testing.assert_allclose(noisy.transition_table, plain.transition_table)
        assert np.any(noisy.phi != plain.phi)

    def test_same_seed_same_instance(self) -> None:
        first = make_random_sparse_mdp(5, 2, 20, 3, 3, seed=4)
        second = make_random_sparse_mdp(5, 2, 20, 3, 3, seed=4)

        np.testing.assert_array_equal(first.phi, second.phi)
        np.testing.assert_array_equal(first.rewards, second.rewards)

    def test_rejects_sparsity_above_dimension(self) -> None:
        with pytest.raises(InvalidInstanceError):
            make_random_sparse_mdp(5, 2, d=3, s=4, horizon=3, seed=0)

    def test_tabular_mdp_layout(self) -> None:
        """테이블형 MDP가 원-핫 특징과 쌍별 ψ를 갖는지 테스트"""
        transitions = np.zeros((2, 2, 2))
        transitions[:, :, 1] = 1.0
        rewards = np.array([[0.1, 0.2], [0.3, 0.4]])

        mdp = make_tabular_mdp(transitions, rewards, horizon=2)

        assert validate_mdp(mdp).is_valid
        assert mdp.d == 4
        np.testing.assert_allclose(mdp.rewards, [0.1, 0.2, 0.3, 0.4])
        np.testing.assert_allclose(mdp.initial_distribution, [0.5, 0.5])

    def test_deterministic_tabular_mdp(self) -> None:
        mdp = make_random_tabular_mdp(4, 3, horizon=3, seed=1, deterministic=True)

        assert validate_mdp(mdp).is_valid
        assert np.all(np.isin(mdp.transition_table, [0.0, 1.0]))


class TestPolicies:
    """정책 모델 테스트"""

    def test_uniform_pair_weights(self, example_mdp) -> None:
        policy = StationaryPolicy.uniform(example_mdp)

        np.testing.assert_allclose(policy.pair_weights(example_mdp), [0.5, 0.5, 1.0])

    def test_rejects_row_not_summing_to_one(self) -> None:
        with pytest.raises(InvalidInstanceError):
            StationaryPolicy((np.array([0.5, 0.6]),))

    def test_undefined_state_raises_coverage_error(self, example_mdp) -> None:
        """정의되지 않은 상태에서 행동을 요구하면 PolicyCoverageError 인지 테스트"""
        policy = StationaryPolicy((np.array([1.0, 0.0]), None))

        with pytest.raises(PolicyCoverageError):
            policy.pair_weights(example_mdp)

    def test_mix(self, example_mdp) -> None:
        first = StationaryPolicy.deterministic(example_mdp, [0, 0])
        second = StationaryPolicy.deterministic(example_mdp, [1, 0])

        mixed = first.mix(second, 0.25)

        np.testing.assert_allclose(mixed.distribution(0), [0.75, 0.25])

    def test_nonstationary_pair_weights(self, example_mdp) -> None:
        policy = NonstationaryPolicy(np.array([[1, 0], [0, 0], [1, 0]]))

        np.testing.assert_array_equal(policy.pair_weights(example_mdp, 0), [0, 1, 1])
        np.testing.assert_array_equal(policy.pair_weights(example_mdp, 1), [1, 0, 1])
        assert policy.horizon == 3


class TestSimulation:
    """에피소드 시뮬레이션 테스트"""

    def test_same_stream_same_trajectory(self, sparse_mdp) -> None:
        """같은 시드의 스트림이면 같은 궤적을 만드는지 테스트"""
        policy = StationaryPolicy.uniform(sparse_mdp)

        first = sample_episode(sparse_mdp, policy, np.random.default_rng(3))
        second = sample_episode(sparse_mdp, policy, np.random.default_rng(3))

        assert first == second
        assert len(first) == sparse_mdp.horizon

    def test_trajectory_is_consistent(self, sparse_mdp, rng) -> None:
        """전이의 다음 상태가 다음 단계 상태와 같고 보상이 r(x,a)인지 테스트"""
        policy = StationaryPolicy.uniform(sparse_mdp)

        trajectory = sample_episode(
            sparse_mdp, policy, rng, episode=7, phase=Phase.EXPLORE
        )

        assert trajectory.episode == 7
        assert trajectory.phase == Phase.EXPLORE
        for current, following in zip(trajectory.steps, trajectory.steps[1:]):
            assert current.next_state == following.state
        for step in trajectory.steps:
            pair = sparse_mdp.pair_index(step.state, step.action)
            assert step.reward == sparse_mdp.rewards[pair]

    def test_transition_frequencies(self, example_mdp, rng) -> None:
        """첫 전이 빈도가 P(·|left, 0) = (0.8, 0.2) 에 가까운지 테스트"""
        policy = StationaryPolicy.deterministic(example_mdp, [0, 0])

        next_states = [
            sample_episode(example_mdp, policy, rng, initial_state=0).steps[0].next_state
            for _ in range(20000)
        ]

        assert abs(np.mean(np.array(next_states) == 0) - 0.8) < 0.015

    def test_initial_states_follow_xi0(self, example_mdp, rng) -> None:
        states = sample_initial_states(example_mdp, rng, 100)

        assert np.all(states == 0)

    def test_phase_from_string(self) -> None:
        assert Phase.from_string("EXPLOIT") == Phase.EXPLOIT
        with pytest.raises(ValueError):
            Phase.from_string("warmup")


class TestSerialization:
    """인스턴스 파일 저장/로드 테스트"""

    def test_dump_and_load_preserve_instance(self, sparse_mdp, tmp_path) -> None:
        """저장 후 로드한 인스턴스가 원본과 비트 단위로 같은지 테스트"""
        path = dump_instance(sparse_mdp, tmp_path / "instance.json", {"note": 1})

        loaded = load_instance(path)

        np.testing.assert_array_equal(loaded.phi, sparse_mdp.phi)
        np.testing.assert_array_equal(loaded.factors, sparse_mdp.factors)
        np.testing.assert_array_equal(loaded.rewards, sparse_mdp.rewards)
        assert loaded.active_set == sparse_mdp.active_set
        assert json.loads(path.read_text())["hard_instance"] == {"note": 1}

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(InvalidInstanceError):
            load_instance(tmp_path / "missing.json")

    def test_schema_error(self, tmp_path) -> None:
        """필수 필드가 빠진 파일을 거부하는지 테스트"""
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"d": 2, "s": 1}))

        with pytest.raises(InvalidInstanceError):
            load_instance(path)

    def test_phi_row_length_mismatch(self, example_mdp, tmp_path) -> None:
        path = dump_instance(example_mdp, tmp_path / "instance.json")
        payload = json.loads(path.read_text())
        payload["phi"][0] = [1.0, 0.0]
        path.write_text(json.dumps(payload))

        with pytest.raises(InvalidInstanceError):
            load_instance(path)
