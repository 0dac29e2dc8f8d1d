from typing import Optional


class CorrelationClusteringError(Exception):
    """라이브러리 공통 예외"""


class InstanceFormatError(CorrelationClusteringError, ValueError):
    """인스턴스 텍스트 형식 오류"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        """
        Args:
            message (str): 오류 메시지
            line_number (Optional[int]): 1부터 시작하는 줄 번호
        """
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ParameterError(CorrelationClusteringError, ValueError):
    """잘못된 인자 또는 파라미터 불변식 위반"""


class DimensionMismatchError(CorrelationClusteringError, ValueError):
    """그래프/분수 클러스터링/LP/인증서 간 차원 불일치"""


class IterationLimitError(CorrelationClusteringError, RuntimeError):
    """심플렉스 반복 한도 초과"""


class OracleSizeError(CorrelationClusteringError, ValueError):
    """정확 탐색 크기 한도 초과"""
