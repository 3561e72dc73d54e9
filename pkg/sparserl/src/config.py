"""
설정 관리 모듈

사용자 설정(config.ini)과 환경변수를 관리합니다.
환경변수를 우선적으로 사용합니다.
"""

import configparser
import os
import sys
from pathlib import Path

from sparserl.src.utils.platform_utils import get_platform_config_dir

CONFIG_DIR = get_platform_config_dir()
CONFIG_FILE = CONFIG_DIR / "config.ini"

SEED_ENV_VAR = "SPARSE_RL_SEED"
DEBUG_ENV_VAR = "SPARSE_RL_DEBUG"

DEFAULT_SECTIONS = [
    "paths",  # 경로 설정
    "debug",  # 디버그 설정
]


def ensure_config_dir() -> None:
    """설정 디렉토리가 존재하는지 확인하고, 없으면 생성합니다."""
    CONFIG_DIR.mkdir(exist_ok=True, parents=True)


def load_config() -> configparser.ConfigParser:
    """설정 파일을 로드합니다. 파일이 없으면 기본 설정을 반환합니다."""
    config = configparser.ConfigParser()

    if CONFIG_FILE.exists():
        try:
            config.read(CONFIG_FILE, encoding="utf-8")
        except (configparser.Error, UnicodeDecodeError) as e:
            from sparserl.src.utils.base_console import console

            console.warning(f"설정 파일이 손상되어 기본 설정을 사용합니다: {e}")
            config = configparser.ConfigParser()

    for section in DEFAULT_SECTIONS:
        if section not in config:
            config[section] = {}

    return config


def save_config(config: configparser.ConfigParser) -> None:
    """설정을 파일에 저장합니다."""
    ensure_config_dir()
    with open(CONFIG_FILE, "w", encoding="utf-8") as f:
        config.write(f)

    if sys.platform != "win32":
        os.chmod(CONFIG_FILE, 0o600)


def get_default_output_dir() -> Path:
    """실험 결과 기본 출력 디렉토리를 반환합니다."""
    config = load_config()

    if "output_dir" in config["paths"]:
        return Path(os.path.expanduser(config["paths"]["output_dir"]))

    return Path.cwd() / "sparserl-runs"


def set_default_output_dir(output_dir: str) -> bool:
    """실험 결과 기본 출력 디렉토리를 설정합니다.

    Args:
        output_dir: 설정할 디렉토리 경로

    Returns:
        bool: 성공 여부
    """
    from sparserl.src.utils.base_console import console

    try:
        out_path = Path(os.path.expanduser(output_dir))
        if not out_path.is_absolute():
            out_path = out_path.resolve()

        config = load_config()
        config["paths"]["output_dir"] = str(out_path)
        save_config(config)

        console.success(f"기본 출력 디렉토리가 {out_path}로 설정되었습니다.")
        return True
    except Exception as e:
        console.error(f"출력 디렉토리 설정 중 오류 발생: {str(e)}", exception=e)
        return False


def get_default_debug_mode() -> bool:
    """debug_mode 설정값을 반환합니다 (환경변수 우선)."""
    env_value = os.getenv(DEBUG_ENV_VAR)
    if env_value is not None:
        return env_value.strip().lower() in ("1", "true", "on", "yes")
    try:
        config = load_config()
        return config["debug"].getboolean("debug_mode", fallback=False)
    except Exception:
        return False


def set_default_debug_mode(debug_mode: bool) -> bool:
    """debug_mode 설정값을 저장합니다."""
    try:
        config = load_config()
        config["debug"]["debug_mode"] = str(debug_mode).lower()
        save_config(config)
        return True
    except Exception as e:
        from sparserl.src.utils.base_console import console

        console.error(f"debug_mode 설정 중 오류 발생: {str(e)}", exception=e)
        return False
