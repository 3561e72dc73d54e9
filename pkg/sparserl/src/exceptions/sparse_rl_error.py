"""
sparserl 전체에서 사용하는 기본 예외 클래스 정의 모듈입니다.
"""


class SparseRLError(Exception):
    """sparserl 도메인 오류의 기본 예외 클래스"""

    pass
