"""탐색 예산 N₁ 선택 테스트"""

import math

import pytest
from pydantic import ValidationError

from sparserl.src.agents.budget import (
    choose_exploration_length,
    exploration_formula,
    regret_ceiling,
)
from sparserl.src.agents.models import BudgetMode, ExplorationBudget
from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError


class TestExplorationLength:
    """choose_exploration_length 테스트"""

    def test_oracle_golden_value_is_capped(self) -> None:
        """N=10000, H=3, d=100, s=3, C_min=0.5, δ=0.1 에서 N₁=9999 로 제한되는지 테스트"""
        budget = choose_exploration_length(
            10000, 3, 100, 3, 0.5, 0.1, BudgetMode.ORACLE
        )

        assert budget.raw_value == pytest.approx(173_200, rel=1e-3)
        assert budget.capped
        assert budget.exploration_episodes == 9999
        assert budget.episodes_per_fold == 3333

    def test_formula_matches_closed_form(self) -> None:
        raw = exploration_formula(BudgetMode.ORACLE, 10000, 3, 100, 3, 0.5, 0.1)

        expected = (
            2048 * 9 * 3**4 * 10000**2 * math.log(6000.0) / 0.25
        ) ** (1.0 / 3.0)
        assert raw == pytest.approx(expected)

    def test_conservative_ignores_sparsity(self) -> None:
        first = exploration_formula(BudgetMode.CONSERVATIVE, 500, 3, 50, 1, 0.1, 0.1)
        second = exploration_formula(BudgetMode.CONSERVATIVE, 500, 3, 50, 9, 0.9, 0.1)

        assert first == second

    def test_rounds_up_to_multiple_of_horizon(self) -> None:
        """공식 값을 H의 배수로 올림하는지 테스트"""
        budget = choose_exploration_length(
            10**7, 4, 20, 2, 1.0, 0.1, BudgetMode.CONSERVATIVE, scale=1e-3
        )

        assert not budget.capped
        assert budget.exploration_episodes % 4 == 0
        assert budget.exploration_episodes >= budget.raw_value
        assert budget.exploration_episodes - budget.raw_value < 4

    @pytest.mark.parametrize("fixed,expected", [(4, 6), (6, 6), (1, 3), (500, 99)])
    def test_fixed_mode(self, fixed, expected) -> None:
        budget = choose_exploration_length(
            100, 3, 10, 2, 1.0, 0.1, BudgetMode.FIXED, fixed_episodes=fixed
        )

        assert budget.exploration_episodes == expected
        assert budget.capped == (fixed == 500)

    def test_fixed_mode_requires_value(self) -> None:
        with pytest.raises(ExperimentConfigError):
            choose_exploration_length(100, 3, 10, 2, 1.0, 0.1, BudgetMode.FIXED)

    def test_rejects_too_few_episodes(self) -> None:
        """N < H 이면 fold 를 만들 수 없어 거부하는지 테스트"""
        with pytest.raises(ExperimentConfigError):
            choose_exploration_length(2, 3, 10, 2, 1.0, 0.1, BudgetMode.CONSERVATIVE)

    @pytest.mark.parametrize(
        "c_min,delta", [(0.0, 0.1), (-1.0, 0.1), (1.0, 0.0), (1.0, 1.0)]
    )
    def test_rejects_invalid_inputs(self, c_min, delta) -> None:
        with pytest.raises(ExperimentConfigError):
            choose_exploration_length(100, 3, 10, 2, c_min, delta, BudgetMode.ORACLE)

    def test_budget_model_rejects_non_multiple(self) -> None:
        with pytest.raises(ValidationError):
            ExplorationBudget(
                mode=BudgetMode.FIXED,
                exploration_episodes=5,
                total_episodes=100,
                horizon=3,
                d=10,
                s=2,
                c_min=1.0,
                delta=0.1,
            )

    def test_mode_from_string(self) -> None:
        assert BudgetMode.from_string("Oracle") == BudgetMode.ORACLE
        with pytest.raises(ValueError):
            BudgetMode.from_string("adaptive")


class TestRegretCeiling:
    """regret_ceiling 테스트"""

    def test_two_thirds_scaling(self) -> None:
        """N 을 8배 하면 상한이 4배가 되는지 테스트"""
        small = regret_ceiling(1000, 3, 100, 3, 0.5, 0.1)
        large = regret_ceiling(8000, 3, 100, 3, 0.5, 0.1)

        assert large / small == pytest.approx(4.0)

    def test_ceiling_is_twice_oracle_formula(self) -> None:
        """상한이 같은 입력의 oracle N₁ 공식 값의 두 배인지 테스트"""
        raw = exploration_formula(BudgetMode.ORACLE, 1000, 3, 100, 3, 0.5, 0.1)

        ceiling = regret_ceiling(1000, 3, 100, 3, 0.5, 0.1)

        assert ceiling == pytest.approx(2.0 * raw)
