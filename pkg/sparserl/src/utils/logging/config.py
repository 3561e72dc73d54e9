"""로깅 설정 관리 모듈.

전역 기록은 플랫폼 설정 디렉토리의 `sparserl.log`에 크기 기준으로 돌려 쓰고,
실험 하나의 기록은 결과 디렉토리의 `run.log`에 따로 남깁니다.
콘솔 출력은 디버그 모드일 때만 켭니다.
"""

import logging
import logging.handlers
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

from sparserl.src.utils.platform_utils import get_platform_config_dir

LOG_LEVEL_DEBUG = logging.DEBUG
LOG_LEVEL_INFO = logging.INFO
LOG_LEVEL_WARNING = logging.WARNING
LOG_LEVEL_ERROR = logging.ERROR

DETAILED_LOG_FORMAT = (
    "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"
)
RUN_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_FILE_NAME = "sparserl.log"
RUN_LOG_FILE_NAME = "run.log"
PACKAGE_LOGGER = "sparserl"


def get_default_log_dir() -> Path:
    """기본 로그 디렉토리를 반환합니다."""
    return get_platform_config_dir() / "logs"


def should_enable_console_logging() -> bool:
    """설정의 디버그 모드 값으로 콘솔 로깅 여부를 결정합니다."""
    try:
        from sparserl.src.config import get_default_debug_mode

        return get_default_debug_mode()
    except ImportError:
        # 순환 임포트
        return False


def setup_logging(
    level: int = LOG_LEVEL_DEBUG,
    log_format: str = DETAILED_LOG_FORMAT,
    log_dir: Path | None = None,
    max_file_size_mb: int = 10,
    backup_count: int = 5,
) -> None:
    """루트 로거에 콘솔(디버그 모드)과 파일 핸들러를 붙입니다.

    Args:
        level: 루트 로거 레벨
        log_format: 로그 메시지 형식
        log_dir: 로그 디렉토리 (기본값: 플랫폼 설정 디렉토리 아래 logs)
        max_file_size_mb: 파일 하나의 최대 크기 (MB)
        backup_count: 보관할 이전 파일 수
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    formatter = logging.Formatter(log_format)

    if should_enable_console_logging():
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    log_dir = log_dir or get_default_log_dir()
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
    except OSError:
        # 읽기 전용 홈 디렉토리면 파일 로깅 없이 진행
        return

    file_handler = logging.handlers.RotatingFileHandler(
        log_dir / LOG_FILE_NAME,
        maxBytes=max_file_size_mb * 1024 * 1024,
        backupCount=backup_count,
        encoding="utf-8",
    )
    file_handler.setFormatter(formatter)
    root_logger.addHandler(file_handler)


@contextmanager
def run_log(output_dir: Path, level: int = LOG_LEVEL_INFO) -> Iterator[Path]:
    """블록 안에서 패키지 로그를 `output_dir/run.log`에도 기록합니다.

    Args:
        output_dir: 실험 결과 디렉토리
        level: run.log 에 남길 최소 레벨

    Yields:
        Path: run.log 경로
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    path = output_dir / RUN_LOG_FILE_NAME
    handler = logging.FileHandler(path, mode="w", encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(RUN_LOG_FORMAT))

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    previous_level = package_logger.level
    if previous_level == logging.NOTSET or previous_level > level:
        package_logger.setLevel(level)
    package_logger.addHandler(handler)
    try:
        yield path
    finally:
        package_logger.removeHandler(handler)
        package_logger.setLevel(previous_level)
        handler.close()


def get_logger(name: str, level: int | None = None) -> logging.Logger:
    """지정된 이름의 로거를 반환합니다.

    Args:
        name: 로거 이름 (보통 __name__)
        level: 로거 레벨 (없으면 상위 로거 레벨 상속)
    """
    logger = logging.getLogger(name)
    if level is not None:
        logger.setLevel(level)
    return logger
