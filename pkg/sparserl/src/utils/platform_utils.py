"""플랫폼별 유틸리티 함수들.

설정 파일과 로그 파일이 놓일 플랫폼별 디렉토리를 결정합니다.
"""

import os
import platform
from pathlib import Path

APP_DIR_NAME = "sparserl"


def get_platform_config_dir() -> Path:
    """플랫폼별 설정 디렉토리를 반환합니다.

    Returns:
        Path: 플랫폼에 맞는 설정 디렉토리 경로
    """
    system = platform.system().lower()

    if system == "darwin":  # macOS
        return Path.home() / "Library" / "Application Support" / APP_DIR_NAME
    elif system == "windows":
        appdata = os.getenv("APPDATA")
        if appdata:
            return Path(appdata) / APP_DIR_NAME
        return Path.home() / "AppData" / "Roaming" / APP_DIR_NAME
    else:  # Linux 및 기타 Unix 계열 (XDG Base Directory)
        xdg_config = os.getenv("XDG_CONFIG_HOME")
        if xdg_config:
            return Path(xdg_config) / APP_DIR_NAME
        return Path.home() / ".config" / APP_DIR_NAME
