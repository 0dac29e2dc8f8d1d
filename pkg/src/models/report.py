from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

import numpy as np

from src.models.clustering import Clustering
from src.models.rounding import RoundingParams


@dataclass
class ExactResult:
    """정확 탐색 결과"""
    clustering: Clustering        # 최적 클러스터링 (동점이면 사전순 첫 RGS)
    value: float                  # 최적 목적 함수 값
    examined: int                 # 검사한 분할 수

    def to_dict(self) -> Dict:
        return {"clustering": self.clustering.clusters(), "value": self.value, "examined": self.examined}


@dataclass(frozen=True)
class ToleranceMap:
    """정점별 허용 오류 수 t_v"""
    tolerances: Mapping[int, int]

    def __post_init__(self):
        for v, t in self.tolerances.items():
            if t < 0:
                raise ValueError(f"허용 오류 수는 음수일 수 없습니다: t_{v} = {t}")

    @classmethod
    def uniform(cls, vertices, t: int) -> 'ToleranceMap':
        return cls({int(v): int(t) for v in vertices})

    def __contains__(self, v: int) -> bool:
        return v in self.tolerances

    def __getitem__(self, v: int) -> int:
        return self.tolerances[v]


@dataclass(frozen=True)
class TPerfectResult:
    """t-perfect 판정 결과"""
    perfect: bool
    first_violation: Optional[int] = None   # 처음으로 조건을 어긴 정점

    def __bool__(self) -> bool:
        return self.perfect


@dataclass
class AcnGapSummary:
    """ACN 기준선의 최악 정점 오류 통계"""
    t: int
    trials: int
    worst_errors: List[int]       # 시행별 최악 정점 오류 수
    optimum: int = 1              # M_t의 정확한 linf 최적값 (거대 클러스터)

    @property
    def minimum(self) -> int:
        return min(self.worst_errors)

    @property
    def maximum(self) -> int:
        return max(self.worst_errors)

    @property
    def mean(self) -> float:
        return float(np.mean(self.worst_errors))

    @property
    def ratio(self) -> float:
        return self.maximum / self.optimum

    def to_dict(self) -> Dict:
        return {
            "t": self.t,
            "trials": self.trials,
            "min": self.minimum,
            "max": self.maximum,
            "mean": self.mean,
            "optimum": self.optimum,
            "ratio": self.ratio,
        }


@dataclass
class PipelineOptions:
    """파이프라인 실행 옵션"""
    round: bool = True
    exact: bool = False
    acn: bool = False
    audit: bool = False
    seed: int = 0
    solver: str = "simplex"
    params: Optional[RoundingParams] = None   # None이면 기본값


@dataclass
class RunReport:
    """파이프라인 실행 보고서

    timings를 제외한 모든 필드는 같은 입력과 시드에 대해 동일합니다.
    """
    instance: Dict
    objective: str
    lp_value: Optional[float] = None
    rounded_errors: Optional[List[float]] = None
    rounded_value: Optional[float] = None
    clusters: Optional[List[List[int]]] = None
    exact_value: Optional[float] = None
    acn_value: Optional[float] = None
    ratio: Optional[float] = None
    ratio_constant: Optional[float] = None
    per_vertex_violations: List[Dict] = field(default_factory=list)
    audit_violations: Optional[int] = None
    params: Optional[Dict] = None
    seeds: Dict = field(default_factory=dict)
    solver: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def has_violations(self) -> bool:
        return bool(self.per_vertex_violations) or bool(self.audit_violations)

    def to_dict(self, include_timings: bool = True) -> Dict:
        """고정된 키 순서의 보고서 딕셔너리"""
        document = OrderedDict([
            ("instance", self.instance),
            ("objective", self.objective),
            ("lp_value", self.lp_value),
            ("rounded_errors", self.rounded_errors),
            ("rounded_value", self.rounded_value),
            ("clusters", self.clusters),
            ("exact_value", self.exact_value),
            ("acn_value", self.acn_value),
            ("ratio", self.ratio),
            ("ratio_constant", self.ratio_constant),
            ("per_vertex_violations", self.per_vertex_violations),
            ("audit_violations", self.audit_violations),
            ("params", self.params),
            ("seeds", self.seeds),
            ("solver", self.solver),
        ])
        if include_timings:
            document["timings"] = dict(self.timings)
        return document
