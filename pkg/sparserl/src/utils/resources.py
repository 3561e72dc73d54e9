"""패키지 리소스(sparserl/resources) 접근 유틸리티."""

import importlib.resources
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

EXAMPLE_INSTANCE = "example_instance.json"
EXAMPLE_EXPERIMENT = "example_experiment.yml"
TWO_THIRDS_CURVE = "curve_two_thirds.csv"


@contextmanager
def resource_path(name: str) -> Iterator[Path]:
    """리소스 파일의 실제 경로를 컨텍스트 동안 제공합니다.

    Raises:
        FileNotFoundError: 리소스가 없는 경우
    """
    file_ref = importlib.resources.files("sparserl.resources").joinpath(name)
    if not file_ref.is_file():
        raise FileNotFoundError(f"리소스 파일을 찾을 수 없습니다: {name}")
    with importlib.resources.as_file(file_ref) as file_path:
        yield file_path
