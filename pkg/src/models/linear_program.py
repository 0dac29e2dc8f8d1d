from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np

from src.exceptions import DimensionMismatchError, ParameterError

SolveStatus = Literal["optimal", "infeasible", "unbounded"]
RowKind = Literal["triangle", "error", "upper"]
LpBackend = Literal["simplex", "highs"]


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """min c^T x + objective_constant  s.t.  A x <= b,  lower <= x <= upper"""
    c: np.ndarray                         # 목적 계수 (열 수)
    A: np.ndarray                         # 부등식 계수 (행 수 x 열 수)
    b: np.ndarray                         # 우변 (행 수)
    lower: np.ndarray                     # 변수 하한
    upper: np.ndarray                     # 변수 상한 (np.inf 허용)
    names: List[str]                      # 변수 이름 (x_u_v, M)
    pair_columns: Dict[Tuple[int, int], int] = field(default_factory=dict)  # 쌍 -> 열 번호
    vertex_count: int = 0                 # 거리 행렬 크기
    objective_constant: float = 0.0       # 목적 함수 상수항
    row_kinds: List[RowKind] = field(default_factory=list)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        A = np.asarray(self.A, dtype=np.float64)
        b = np.asarray(self.b, dtype=np.float64)
        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        cols = c.shape[0]
        if A.ndim != 2:
            A = A.reshape(0, cols)
        if A.shape[1] != cols:
            raise DimensionMismatchError(f"제약 행렬 열 수 불일치: {A.shape[1]} != {cols}")
        if b.shape != (A.shape[0],):
            raise DimensionMismatchError(f"우변 길이 불일치: {b.shape} != ({A.shape[0]},)")
        if lower.shape != (cols,) or upper.shape != (cols,):
            raise DimensionMismatchError("변수 경계 길이가 열 수와 다릅니다.")
        if len(self.names) != cols:
            raise DimensionMismatchError(f"변수 이름 수 불일치: {len(self.names)} != {cols}")
        if self.row_kinds and len(self.row_kinds) != A.shape[0]:
            raise DimensionMismatchError("행 종류 수가 행 수와 다릅니다.")
        if (lower > upper).any():
            raise ParameterError(f"하한이 상한보다 큰 변수: {np.flatnonzero(lower > upper).tolist()}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def row_count(self) -> int:
        return int(self.A.shape[0])

    @property
    def column_count(self) -> int:
        return int(self.c.shape[0])

    def count_rows(self, kind: RowKind) -> int:
        return sum(1 for k in self.row_kinds if k == kind)

    def objective_value(self, values: np.ndarray) -> float:
        return float(self.c @ values) + self.objective_constant

    def max_violation(self, values: np.ndarray) -> float:
        """행 제약과 변수 경계의 최대 위반량 (위반이 없으면 0)"""
        values = np.asarray(values, dtype=np.float64)
        worst = 0.0
        if self.row_count:
            worst = max(worst, float((self.A @ values - self.b).max()))
        worst = max(worst, float((self.lower - values).max()), float((values - self.upper).max()))
        return max(worst, 0.0)


@dataclass
class LpSolution:
    """LP 풀이 결과"""
    status: SolveStatus                   # 최적/불능/비유계
    values: Optional[np.ndarray] = None   # 최적해 (status == optimal일 때만)
    objective: Optional[float] = None     # 목적 함수 값 (상수항 포함)
    iterations: int = 0                   # 피벗 횟수 (phase 1 + phase 2)
    backend: LpBackend = "simplex"

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"

    def to_dict(self) -> Dict:
        return {
            "status": self.status,
            "objective": self.objective,
            "iterations": self.iterations,
            "backend": self.backend,
        }


@dataclass(frozen=True, eq=False)
class DualCertificate:
    """쌍대 해 (π와 집계된 σ̂만 보관)"""
    pi: np.ndarray                        # 정점별 π_v
    sigma_hat: np.ndarray                 # (n, n) 대칭 행렬, σ̂_{u,v}
    claimed_objective: float              # 증명에서 주장하는 목적 함수 값

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=np.float64)
        sigma_hat = np.asarray(self.sigma_hat, dtype=np.float64)
        n = pi.shape[0]
        if sigma_hat.shape != (n, n):
            raise DimensionMismatchError(f"σ̂ 행렬 크기 불일치: {sigma_hat.shape} != ({n}, {n})")
        if not np.allclose(sigma_hat, sigma_hat.T, atol=1e-12, rtol=0.0):
            raise DimensionMismatchError("σ̂ 행렬이 대칭이 아닙니다.")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "sigma_hat", sigma_hat)

    @property
    def vertex_count(self) -> int:
        return int(self.pi.shape[0])


@dataclass
class DualVerdict:
    """쌍대 인증서 검증 결과"""
    feasible: bool
    objective: float                      # Σ_v d⁻(v) π_v
    pi_sum: float
    violations: List[str] = field(default_factory=list)
    slack_pairs: List[Tuple[int, int]] = field(default_factory=list)  # 여유가 있는 + 간선

    def to_dict(self) -> Dict:
        return {
            "feasible": self.feasible,
            "objective": self.objective,
            "pi_sum": self.pi_sum,
            "violations": list(self.violations),
            "slack_pairs": [list(pair) for pair in self.slack_pairs],
        }
