"""
사용자 설정 파일과 환경변수 우선순위 테스트 모듈.
"""

import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from click.testing import CliRunner

from sparserl.cli import cli
from sparserl.src import config as config_module
from sparserl.src.config import (
    DEBUG_ENV_VAR,
    get_default_debug_mode,
    get_default_output_dir,
    load_config,
    set_default_debug_mode,
    set_default_output_dir,
)


class TestUserConfig(unittest.TestCase):
    """config.ini 기반 설정 테스트 클래스."""

    def setUp(self) -> None:
        """임시 설정 디렉토리로 바꾸고 디버그 환경변수를 비웁니다."""
        self.temp_dir = tempfile.TemporaryDirectory()
        config_dir = Path(self.temp_dir.name)
        self.patches = [
            patch.object(config_module, "CONFIG_DIR", config_dir),
            patch.object(config_module, "CONFIG_FILE", config_dir / "config.ini"),
            patch.dict(os.environ, {}, clear=False),
        ]
        for p in self.patches:
            p.start()
        os.environ.pop(DEBUG_ENV_VAR, None)

    def tearDown(self) -> None:
        for p in reversed(self.patches):
            p.stop()
        self.temp_dir.cleanup()

    def test_default_sections(self) -> None:
        """설정 파일이 없으면 기본 섹션만 있는 설정을 반환하는지 테스트."""
        config = load_config()

        self.assertIn("paths", config)
        self.assertIn("debug", config)

    def test_output_dir_roundtrip(self) -> None:
        target = Path(self.temp_dir.name) / "runs"

        self.assertTrue(set_default_output_dir(str(target)))
        self.assertEqual(get_default_output_dir(), target.resolve())

    def test_default_output_dir_under_cwd(self) -> None:
        self.assertEqual(get_default_output_dir(), Path.cwd() / "sparserl-runs")

    def test_debug_mode_from_file(self) -> None:
        self.assertFalse(get_default_debug_mode())

        self.assertTrue(set_default_debug_mode(True))
        self.assertTrue(get_default_debug_mode())

    def test_debug_env_has_priority(self) -> None:
        """환경변수가 설정 파일보다 우선하는지 테스트."""
        set_default_debug_mode(True)

        os.environ[DEBUG_ENV_VAR] = "off"
        self.assertFalse(get_default_debug_mode())

        os.environ[DEBUG_ENV_VAR] = "1"
        self.assertTrue(get_default_debug_mode())

    def test_corrupt_file_falls_back(self) -> None:
        """손상된 설정 파일이면 기본 설정으로 돌아가는지 테스트."""
        config_module.CONFIG_FILE.write_text("[paths\noutput_dir", encoding="utf-8")

        config = load_config()

        self.assertNotIn("output_dir", config["paths"])

    def test_config_commands(self) -> None:
        runner = CliRunner()
        target = Path(self.temp_dir.name) / "from-cli"

        result = runner.invoke(cli, ["config", "output-dir", str(target)])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(get_default_output_dir(), target.resolve())

        result = runner.invoke(cli, ["config", "debug-mode", "on"])
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(get_default_debug_mode())

        result = runner.invoke(cli, ["config", "list"])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("sparserl", result.output)


if __name__ == "__main__":
    unittest.main()
