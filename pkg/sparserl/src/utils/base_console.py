"""기본 콘솔 출력 및 로깅을 위한 모듈."""

from collections.abc import Generator
from contextlib import contextmanager

from rich.console import Console
from rich.status import Status

from sparserl.src.utils.logging import get_logger


class BaseConsole:
    """콘솔 출력과 로그 기록을 함께 관리하는 클래스.

    quiet 모드에서는 진행/정보 메시지를 숨기고 결과(`result`)와 오류만 출력합니다.
    """

    def __init__(self) -> None:
        self.console = Console()
        self.logger = get_logger(__name__)
        self.quiet = False

    def set_quiet(self, quiet: bool) -> None:
        """quiet 모드를 설정합니다."""
        self.quiet = quiet

    def success(self, message: str) -> None:
        """성공 메시지를 출력합니다."""
        if not self.quiet:
            self.console.print(message, style="bold green")
        self.logger.info(f"SUCCESS: {message}")

    def info(self, message: str) -> None:
        """정보 메시지를 출력합니다."""
        if not self.quiet:
            self.console.print(message, style="bold blue")
        self.logger.info(f"INFO: {message}")

    def warning(self, message: str) -> None:
        """경고 메시지를 출력합니다."""
        if not self.quiet:
            self.console.print(message, style="bold yellow")
        self.logger.warning(f"WARNING: {message}")

    def error(self, message: str, exception: Exception | None = None) -> None:
        """오류 메시지를 출력합니다.

        Args:
            message: 오류 메시지
            exception: 예외 객체 (있으면 스택 트레이스를 로그에 남김)
        """
        self.console.print(message, style="bold red", markup=False)
        if exception:
            self.logger.error(f"ERROR: {message}", exc_info=True)
        else:
            self.logger.error(f"ERROR: {message}")

    def result(self, message: str) -> None:
        """기계가 읽는 결과 줄을 그대로 출력합니다 (quiet 모드에서도 출력)."""
        # rich의 print는 탭을 공백으로 확장하므로 스트림에 직접 씁니다.
        self.console.file.write(message + "\n")

    @contextmanager
    def status(self, message: str) -> Generator[Status | None, None, None]:
        """진행 상황을 스피너와 함께 표시합니다."""
        if self.quiet:
            yield None
            return
        with self.console.status(message, spinner="dots") as status:
            yield status

    def is_debug_mode(self) -> bool:
        """디버그 모드 여부 확인"""
        try:
            from sparserl.src.config import get_default_debug_mode

            return get_default_debug_mode()
        except (ImportError, Exception):
            return False


# 전역 콘솔 인스턴스
console = BaseConsole()
