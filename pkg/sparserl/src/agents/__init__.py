"""
온라인 에이전트 패키지 (Online Lasso-FQI와 기준 에이전트)
"""

from sparserl.src.agents.baselines import run_baseline
from sparserl.src.agents.budget import (
    choose_exploration_length,
    exploration_formula,
    regret_ceiling,
)
from sparserl.src.agents.models import (
    BaselineKind,
    BudgetMode,
    ExplorationBudget,
    RunRecord,
)
from sparserl.src.agents.online_lasso_fqi import (
    run_explore_then_commit,
    run_online_lasso_fqi,
)

__all__ = [
    "run_baseline",
    "choose_exploration_length",
    "exploration_formula",
    "regret_ceiling",
    "BaselineKind",
    "BudgetMode",
    "ExplorationBudget",
    "RunRecord",
    "run_explore_then_commit",
    "run_online_lasso_fqi",
]
