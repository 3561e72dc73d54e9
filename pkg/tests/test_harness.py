"""실험 설정, 난수 스트림, 후회 곡선, 기울기 적합, 실험 실행 테스트"""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from sparserl.src.exceptions.experiment_config_error import ExperimentConfigError
from sparserl.src.exceptions.insufficient_curve_points_error import (
    InsufficientCurvePointsError,
)
from sparserl.src.harness.experiment import run_experiment
from sparserl.src.harness.models import (
    AgentKind,
    ExperimentConfig,
    InstanceKind,
    RegretCurve,
)
from sparserl.src.harness.persistence import read_curve_csv, write_curve_csv
from sparserl.src.harness.slope import fit_regret_slope, fit_slope_points
from sparserl.src.harness.streams import replicate_seed, replicate_stream
from sparserl.src.utils.resources import (
    EXAMPLE_EXPERIMENT,
    TWO_THIRDS_CURVE,
    resource_path,
)

SMALL_INSTANCE = {
    "kind": "random-sparse",
    "horizon": 3,
    "seed": 11,
    "num_states": 6,
    "num_actions": 3,
    "d": 12,
    "s": 3,
}


def _small_config(**overrides) -> ExperimentConfig:
    data = {
        "instance": SMALL_INSTANCE,
        "agent": {"kind": "lasso-fqi"},
        "budget": {"mode": "fixed", "fixed_episodes": 6},
        "lasso": {"lambda": 0.05},
        "grid": [12, 24],
        "replicates": 2,
        "master_seed": 3,
        "max_workers": 2,
    }
    data.update(overrides)
    return ExperimentConfig.model_validate(data)


class TestExperimentConfig:
    """ExperimentConfig 테스트"""

    def test_example_resource(self) -> None:
        with resource_path(EXAMPLE_EXPERIMENT) as path:
            config = ExperimentConfig.from_file(path)

        assert config.instance.kind == InstanceKind.RANDOM_SPARSE
        assert config.agent.kind == AgentKind.LASSO_FQI
        assert config.grid == [300, 1200, 4800]
        assert config.replicates == 4

    def test_hash_ignores_output_location_and_workers(self, tmp_path) -> None:
        """출력 위치와 병렬도는 해시에 영향을 주지 않는지 테스트"""
        base = _small_config()
        moved = _small_config(output_dir=str(tmp_path), max_workers=8, keep_run_files=False)

        assert base.config_hash() == moved.config_hash()
        assert "output_dir" not in base.hashed_fields()
        assert len(base.config_hash()) == 64

    def test_hash_tracks_result_fields(self) -> None:
        base = _small_config()

        assert base.config_hash() != _small_config(master_seed=4).config_hash()
        assert base.config_hash() != _small_config(grid=[12, 48]).config_hash()

    @pytest.mark.parametrize("grid", [[], [0, 12], [12, 12]])
    def test_rejects_invalid_grid(self, grid) -> None:
        with pytest.raises(ValidationError):
            _small_config(grid=grid)

    def test_rejects_unknown_field(self) -> None:
        with pytest.raises(ValidationError):
            _small_config(agents={"kind": "lasso-fqi"})

    def test_from_file_resolves_relative_instance(self, tmp_path) -> None:
        """파일 인스턴스 상대 경로를 설정 파일 위치 기준으로 바꾸는지 테스트"""
        path = tmp_path / "experiment.yml"
        path.write_text(
            "instance:\n  kind: file\n  path: instances/a.json\ngrid: [10]\n",
            encoding="utf-8",
        )

        config = ExperimentConfig.from_file(path)

        assert config.instance.path == (tmp_path / "instances" / "a.json").resolve()

    def test_from_file_accepts_json(self, tmp_path) -> None:
        path = tmp_path / "experiment.json"
        path.write_text(json.dumps({"grid": [10, 20], "master_seed": 9}), encoding="utf-8")

        config = ExperimentConfig.from_file(path)

        assert config.master_seed == 9

    @pytest.mark.parametrize(
        "content", ["grid: [10\n", "- 1\n- 2\n", "grid: [10]\nreplicates: 0\n"]
    )
    def test_from_file_errors(self, tmp_path, content) -> None:
        path = tmp_path / "broken.yml"
        path.write_text(content, encoding="utf-8")

        with pytest.raises(ExperimentConfigError) as exc_info:
            ExperimentConfig.from_file(path)
        assert exc_info.value.path == path

    def test_from_file_missing(self, tmp_path) -> None:
        with pytest.raises(ExperimentConfigError):
            ExperimentConfig.from_file(tmp_path / "missing.yml")


class TestStreams:
    """복제 실행 난수 스트림 테스트"""

    def test_same_key_same_stream(self) -> None:
        first = replicate_stream(7, 100, 2).random(5)
        second = replicate_stream(7, 100, 2).random(5)

        np.testing.assert_array_equal(first, second)

    @pytest.mark.parametrize("key", [(8, 100, 2), (7, 101, 2), (7, 100, 3)])
    def test_different_key_different_stream(self, key) -> None:
        base = replicate_stream(7, 100, 2).random(5)

        assert not np.array_equal(base, replicate_stream(*key).random(5))

    def test_replicate_seed(self) -> None:
        seed = replicate_seed(7, 100, 2)

        assert isinstance(seed, int)
        assert seed == replicate_seed(7, 100, 2)
        assert seed != replicate_seed(7, 100, 3)


class TestRegretCurve:
    """RegretCurve 테스트"""

    def test_means_and_stderrs(self) -> None:
        curve = RegretCurve(grid=(10, 20), values=np.array([[1.0, 3.0], [2.0, 2.0]]))

        np.testing.assert_allclose(curve.means, [2.0, 2.0])
        np.testing.assert_allclose(curve.stderrs, [1.0, 0.0])
        assert curve.replicates == 2

    def test_single_replicate_has_zero_stderr(self) -> None:
        curve = RegretCurve(grid=(10,), values=np.array([[4.0]]))

        np.testing.assert_array_equal(curve.stderrs, [0.0])

    def test_rejects_non_finite(self) -> None:
        with pytest.raises(ValueError):
            RegretCurve(grid=(10,), values=np.array([[np.nan]]))

    def test_rejects_wrong_shape(self) -> None:
        with pytest.raises(ValueError):
            RegretCurve(grid=(10, 20), values=np.ones((3, 2)))

    def test_curve_csv_keeps_full_precision(self, tmp_path) -> None:
        curve = RegretCurve(grid=(5, 9), values=np.array([[0.1, 1 / 3], [2.5, 1e-17]]))

        loaded = read_curve_csv(write_curve_csv(curve, tmp_path / "curve.csv"))

        assert loaded.grid == (5, 9)
        np.testing.assert_array_equal(loaded.values, curve.values)

    def test_read_rejects_unknown_columns(self, tmp_path) -> None:
        path = tmp_path / "curve.csv"
        path.write_text("episodes,regret\n10,1.0\n", encoding="utf-8")

        with pytest.raises(ExperimentConfigError):
            read_curve_csv(path)


class TestSlope:
    """후회 지수 적합 테스트"""

    def test_two_thirds_fixture(self) -> None:
        """정확히 N^{2/3} 인 곡선의 기울기가 2/3 인지 테스트"""
        with resource_path(TWO_THIRDS_CURVE) as path:
            curve = read_curve_csv(path)

        fit = fit_regret_slope(curve)

        assert fit.slope == pytest.approx(2.0 / 3.0, abs=1e-9)
        assert fit.half_width == pytest.approx(0.0, abs=1e-9)
        assert fit.used_points == (64, 512, 4096, 32768)
        assert fit.intercept == pytest.approx(np.log(2.0), abs=1e-9)

    def test_non_positive_points_are_excluded(self) -> None:
        fit = fit_slope_points([1, 2, 4, 8], np.array([0.0, 2.0, 4.0, 8.0]))

        assert fit.slope == pytest.approx(1.0)
        assert fit.excluded_points == (1,)
        assert fit.used_points == (2, 4, 8)

    def test_insufficient_points(self) -> None:
        with pytest.raises(InsufficientCurvePointsError) as exc_info:
            fit_slope_points([1, 2, 3], np.array([1.0, 0.0, 2.0]))

        assert exc_info.value.usable_points == 2
        assert exc_info.value.excluded == [2]
        assert "2" in str(exc_info.value)


class TestRunExperiment:
    """run_experiment 테스트"""

    def test_same_config_same_bytes(self, tmp_path) -> None:
        """같은 설정과 시드면 결과 파일이 바이트 단위로 같은지 테스트"""
        config = _small_config()

        first = run_experiment(config, output_dir=tmp_path / "first")
        second = run_experiment(config, output_dir=tmp_path / "second")

        for name in ("curve.csv", "summary.csv", "manifest.json"):
            assert (tmp_path / "first" / name).read_bytes() == (
                tmp_path / "second" / name
            ).read_bytes()
        assert len(first.run_paths) == 4
        for left, right in zip(first.run_paths, second.run_paths, strict=True):
            assert left.name == right.name
            assert left.read_bytes() == right.read_bytes()
        assert first.config_hash == second.config_hash

    def test_manifest_contents(self, tmp_path) -> None:
        result = run_experiment(_small_config(), output_dir=tmp_path)

        manifest = json.loads(result.manifest_path.read_text(encoding="utf-8"))
        assert manifest["config_hash"] == result.config_hash
        assert manifest["grid"] == [12, 24]
        assert manifest["exploration_episodes"] == {"12": 6, "24": 6}
        assert (tmp_path / "runs" / "N24_rep1.csv").exists()
        assert (tmp_path / "runs" / "N24_rep1.manifest.json").exists()

    def test_without_output_dir(self) -> None:
        result = run_experiment(_small_config(keep_run_files=False))

        assert result.output_dir is None
        assert result.curve_path is None
        assert result.curve.values.shape == (2, 2)
        assert np.all(result.curve.values >= -1e-9)

    def test_oracle_optimal_curve_is_zero(self) -> None:
        config = _small_config(agent={"kind": "oracle-optimal"}, grid=[10, 20, 40])

        result = run_experiment(config)

        np.testing.assert_array_equal(result.curve.values, 0.0)

    def test_uniform_on_hard_instance(self) -> None:
        """어려운 인스턴스 설정이 k 와 ε 기본값으로 실행되는지 테스트"""
        config = _small_config(
            instance={"kind": "hard", "d": 8, "s": 3, "k": 2, "action_cap": 16},
            agent={"kind": "uniform-random"},
            grid=[8],
            replicates=1,
        )

        result = run_experiment(config)

        assert result.curve.values[0, 0] > 0.0
