"""Online Lasso-FQI 에이전트와 기준 에이전트 실행 기록 테스트"""

import csv
import json

import numpy as np
import pytest

from sparserl.src.agents.baselines import run_baseline
from sparserl.src.agents.budget import choose_exploration_length
from sparserl.src.agents.models import (
    RUN_COLUMNS,
    BaselineKind,
    BudgetMode,
    RunRecord,
)
from sparserl.src.agents.online_lasso_fqi import run_online_lasso_fqi
from sparserl.src.dp.bellman import optimal_values, policy_values
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.linmdp.models import Phase, StationaryPolicy
from sparserl.src.sparsereg.models import LassoConfig


def _fixed_budget(total: int, horizon: int, explore: int, d: int = 12, s: int = 3):
    return choose_exploration_length(
        total, horizon, d, s, 1.0, 0.1, BudgetMode.FIXED, fixed_episodes=explore
    )


@pytest.fixture
def lasso_record(sparse_mdp):
    """N=60, N₁=30 인 Online Lasso-FQI 실행 기록."""
    return run_online_lasso_fqi(
        sparse_mdp,
        StationaryPolicy.uniform(sparse_mdp),
        60,
        _fixed_budget(60, 3, 30),
        LassoConfig(),
        seed=17,
    )


class TestOnlineLassoFQI:
    """run_online_lasso_fqi 테스트"""

    def test_record_shape(self, lasso_record) -> None:
        """탐색/활용 에피소드 수와 누적 후회 일관성 테스트"""
        assert lasso_record.n_episodes == 60
        assert lasso_record.phase_count(Phase.EXPLORE) == 30
        assert lasso_record.phase_count(Phase.EXPLOIT) == 30
        assert lasso_record.phases[:30] == (Phase.EXPLORE,) * 30
        assert lasso_record.episodes_per_fold == 10
        assert lasso_record.total_regret == pytest.approx(
            float(lasso_record.episode_regret.sum())
        )
        assert lasso_record.total_regret == pytest.approx(
            lasso_record.phase_regret(Phase.EXPLORE)
            + lasso_record.phase_regret(Phase.EXPLOIT)
        )
        assert np.all(np.diff(lasso_record.cumulative_regret) >= -1e-12)

    def test_regret_is_exact_gap(self, sparse_mdp, lasso_record) -> None:
        """탐색 에피소드 후회가 V* − V^{π_e} 의 초기 상태 값인지 테스트"""
        optimal = optimal_values(sparse_mdp).initial_values
        uniform = policy_values(
            sparse_mdp, StationaryPolicy.uniform(sparse_mdp)
        ).initial_values
        states = lasso_record.initial_states[:30]

        np.testing.assert_allclose(
            lasso_record.episode_regret[:30], (optimal - uniform)[states]
        )
        assert np.all(lasso_record.episode_regret >= -1e-9)

    def test_same_seed_same_record(self, sparse_mdp, lasso_record) -> None:
        again = run_online_lasso_fqi(
            sparse_mdp,
            StationaryPolicy.uniform(sparse_mdp),
            60,
            _fixed_budget(60, 3, 30),
            LassoConfig(),
            seed=17,
        )

        np.testing.assert_array_equal(again.episode_regret, lasso_record.episode_regret)
        np.testing.assert_array_equal(again.initial_states, lasso_record.initial_states)
        np.testing.assert_array_equal(again.weights.weights, lasso_record.weights.weights)

    def test_keep_trajectories(self, sparse_mdp) -> None:
        record = run_online_lasso_fqi(
            sparse_mdp,
            StationaryPolicy.uniform(sparse_mdp),
            12,
            _fixed_budget(12, 3, 6),
            LassoConfig(lambda_=0.05),
            seed=1,
            keep_trajectories=True,
        )

        assert len(record.trajectories) == 12
        assert [t.initial_state for t in record.trajectories] == list(
            record.initial_states
        )
        assert record.trajectories[-1].phase == Phase.EXPLOIT

    def test_capped_budget_is_flagged(self, sparse_mdp) -> None:
        """예산이 N 으로 제한되면 품질 플래그를 남기는지 테스트"""
        record = run_online_lasso_fqi(
            sparse_mdp,
            StationaryPolicy.uniform(sparse_mdp),
            9,
            _fixed_budget(9, 3, 30),
            LassoConfig(),
            seed=2,
        )

        assert "budget-capped" in record.quality_flags
        assert record.phase_count(Phase.EXPLOIT) == 0

    def test_budget_mismatch(self, sparse_mdp) -> None:
        with pytest.raises(ExperimentConfigError):
            run_online_lasso_fqi(
                sparse_mdp,
                StationaryPolicy.uniform(sparse_mdp),
                30,
                _fixed_budget(60, 3, 30),
                LassoConfig(),
                seed=0,
            )


class TestBaselines:
    """run_baseline 테스트"""

    def test_oracle_optimal_has_zero_regret(self, sparse_mdp) -> None:
        record = run_baseline(sparse_mdp, BaselineKind.ORACLE_OPTIMAL, 50, seed=3)

        assert record.total_regret == 0.0
        assert record.agent == "oracle-optimal"
        assert record.phases == (Phase.BASELINE,) * 50

    def test_uniform_random_regret(self, sparse_mdp) -> None:
        """균등 정책 후회가 V* − V^unif 의 초기 상태 값인지 테스트"""
        record = run_baseline(sparse_mdp, BaselineKind.UNIFORM_RANDOM, 200, seed=4)

        gap = (
            optimal_values(sparse_mdp).initial_values
            - policy_values(sparse_mdp, StationaryPolicy.uniform(sparse_mdp)).initial_values
        )
        np.testing.assert_allclose(record.episode_regret, gap[record.initial_states])
        assert record.total_regret > 0.0

    def test_ridge_requires_policy_and_budget(self, sparse_mdp) -> None:
        with pytest.raises(ExperimentConfigError):
            run_baseline(sparse_mdp, BaselineKind.RIDGE_FQI_ETC, 60, seed=0)

    def test_ridge_etc(self, sparse_mdp) -> None:
        record = run_baseline(
            sparse_mdp,
            BaselineKind.RIDGE_FQI_ETC,
            60,
            seed=5,
            exploratory_policy=StationaryPolicy.uniform(sparse_mdp),
            budget=_fixed_budget(60, 3, 30),
            ridge_alpha=0.5,
        )

        assert record.agent == "ridge-fqi-etc"
        assert record.weights is not None
        assert record.weights.lambdas == (0.5, 0.5, 0.5)
        assert record.lasso_converged

    def test_kind_from_string(self) -> None:
        assert BaselineKind.from_string("Uniform-Random") == BaselineKind.UNIFORM_RANDOM
        with pytest.raises(ValueError):
            BaselineKind.from_string("greedy")


class TestRunRecord:
    """RunRecord 테스트"""

    def test_rejects_mismatched_lengths(self) -> None:
        with pytest.raises(ValueError):
            RunRecord(
                agent="x",
                initial_states=np.zeros(3),
                phases=(Phase.BASELINE,) * 2,
                episode_regret=np.zeros(3),
                exploration_episodes=0,
                horizon=3,
                seed=0,
            )

    def test_to_csv_with_manifest(self, lasso_record, tmp_path) -> None:
        path = lasso_record.to_csv(tmp_path / "run.csv", config={"k": 1})

        with open(path, encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert tuple(rows[0]) == RUN_COLUMNS
        assert len(rows) == 61
        assert rows[1][0] == "1"
        assert rows[1][1] == "explore"
        assert float(rows[-1][4]) == pytest.approx(lasso_record.total_regret)

        manifest = json.loads((tmp_path / "run.manifest.json").read_text())
        assert manifest["N"] == 60
        assert manifest["N1"] == 30
        assert manifest["R"] == 10
        assert manifest["seed"] == 17
        assert manifest["config"] == {"k": 1}
        assert len(manifest["converged"]) == 3
