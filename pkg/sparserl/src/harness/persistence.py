"""결과 CSV와 매니페스트 읽기/쓰기. 실수는 17 유효숫자로 기록합니다."""

import csv
import json
from pathlib import Path
from typing import Any

import numpy as np

from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.harness.models import RegretCurve

CURVE_COLUMNS = ("N", "replicate", "cumulative_regret")
SUMMARY_COLUMNS = ("N", "mean", "stderr")


def format_real(value: float) -> str:
    return f"{value:.17g}"


def write_curve_csv(curve: RegretCurve, path: Path) -> Path:
    """curve.csv: (N, replicate, cumulative_regret), replicate는 0부터."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CURVE_COLUMNS)
        for row, total_episodes in enumerate(curve.grid):
            for replicate in range(curve.replicates):
                value = format_real(curve.values[row, replicate])
                writer.writerow([total_episodes, replicate, value])
    return path


def write_summary_csv(curve: RegretCurve, path: Path) -> Path:
    """summary.csv: (N, mean, stderr)."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(SUMMARY_COLUMNS)
        for row, total_episodes in enumerate(curve.grid):
            writer.writerow(
                [
                    total_episodes,
                    format_real(curve.means[row]),
                    format_real(curve.stderrs[row]),
                ]
            )
    return path


def write_manifest(data: dict[str, Any], path: Path) -> Path:
    path.write_text(
        json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return path


def read_curve_csv(path: Path) -> RegretCurve:
    """curve.csv 또는 summary.csv 형식의 곡선을 읽습니다.

    summary 형식이면 평균을 복제 1개짜리 곡선으로 취급합니다.

    Raises:
        ExperimentConfigError: 파일을 읽을 수 없거나 열이 맞지 않는 경우
    """
    try:
        with open(path, encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise ExperimentConfigError(
            "곡선 파일을 읽을 수 없습니다", path=path, cause=e
        ) from e
    if not rows:
        raise ExperimentConfigError("곡선 파일이 비어 있습니다", path=path)
    columns = set(rows[0])
    try:
        if set(CURVE_COLUMNS) <= columns:
            values: dict[int, dict[int, float]] = {}
            for row in rows:
                by_replicate = values.setdefault(int(row["N"]), {})
                by_replicate[int(row["replicate"])] = float(row["cumulative_regret"])
            grid = tuple(values)
            width = len(values[grid[0]])
            if any(sorted(values[n]) != list(range(width)) for n in grid):
                raise ExperimentConfigError("격자점별 복제 수가 다릅니다", path=path)
            table = np.array([[values[n][r] for r in range(width)] for n in grid])
        elif {"N", "mean"} <= columns:
            grid = tuple(int(row["N"]) for row in rows)
            table = np.array([[float(row["mean"])] for row in rows])
        else:
            raise ExperimentConfigError(
                f"곡선 파일 열이 올바르지 않습니다: {sorted(columns)}", path=path
            )
        return RegretCurve(grid=grid, values=table)
    except (KeyError, ValueError) as e:
        raise ExperimentConfigError(
            "곡선 파일 값을 해석할 수 없습니다", path=path, cause=e
        ) from e
