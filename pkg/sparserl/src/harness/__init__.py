"""
실험 오케스트레이션 패키지 (복제 실행 스윕, 후회 곡선, 기울기 적합, 저장)
"""

from sparserl.src.harness.experiment import (
    PreparedInstance,
    prepare_instance,
    resolve_c_min,
    run_experiment,
    run_replicate,
)
from sparserl.src.harness.models import (
    AgentKind,
    AgentSpec,
    BudgetSpec,
    ExperimentConfig,
    ExperimentResult,
    InstanceKind,
    InstanceSpec,
    RegretCurve,
    SlopeFit,
)
from sparserl.src.harness.persistence import (
    read_curve_csv,
    write_curve_csv,
    write_manifest,
    write_summary_csv,
)
from sparserl.src.harness.slope import fit_regret_slope, fit_slope_points
from sparserl.src.harness.streams import replicate_seed, replicate_stream

__all__ = [
    "PreparedInstance",
    "prepare_instance",
    "resolve_c_min",
    "run_experiment",
    "run_replicate",
    "AgentKind",
    "AgentSpec",
    "BudgetSpec",
    "ExperimentConfig",
    "ExperimentResult",
    "InstanceKind",
    "InstanceSpec",
    "RegretCurve",
    "SlopeFit",
    "read_curve_csv",
    "write_curve_csv",
    "write_manifest",
    "write_summary_csv",
    "fit_regret_slope",
    "fit_slope_points",
    "replicate_seed",
    "replicate_stream",
]
