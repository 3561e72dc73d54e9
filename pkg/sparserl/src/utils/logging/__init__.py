"""로깅 패키지 초기화 모듈.

이 패키지는 애플리케이션 전체에서 사용할 로깅 기능을 제공합니다.
"""

from sparserl.src.utils.logging.config import (
    DETAILED_LOG_FORMAT,
    LOG_LEVEL_DEBUG,
    LOG_LEVEL_ERROR,
    LOG_LEVEL_INFO,
    LOG_LEVEL_WARNING,
    get_logger,
    run_log,
    setup_logging,
)

__all__ = [
    "setup_logging",
    "get_logger",
    "run_log",
    "LOG_LEVEL_DEBUG",
    "LOG_LEVEL_INFO",
    "LOG_LEVEL_WARNING",
    "LOG_LEVEL_ERROR",
    "DETAILED_LOG_FORMAT",
]
