from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

from src.exceptions import ParameterError

EmissionKind = Literal["type1", "type2", "singleton"]
GraphSetting = Literal["complete", "bipartite"]


@dataclass(frozen=True)
class RoundingParams:
    """임계값 라운딩 파라미터"""
    alpha: float                  # T_u 반경
    gamma: float                  # T*_u 반경
    k1: float                     # 분석 상수
    k2: Optional[float] = None    # 분석 상수 (완전 그래프 전용)
    k3: Optional[float] = None    # 분석 상수 (완전 그래프 전용)

    def _threshold_violations(self) -> List[str]:
        failed = []
        if not 0 < self.gamma:
            failed.append("0 < gamma")
        if not self.gamma < self.alpha:
            failed.append("gamma < alpha")
        if not self.alpha < 0.5:
            failed.append("alpha < 1/2")
        if not self.k1 * self.alpha > self.gamma:
            failed.append("k1 * alpha > gamma")
        return failed

    def violations_complete(self) -> List[str]:
        """완전 그래프 분석 조건 중 성립하지 않는 것들"""
        failed = self._threshold_violations()
        if not 0.5 < self.k1 < 1:
            failed.append("1/2 < k1 < 1")
        if self.k2 is None or self.k3 is None:
            failed.append("k2, k3 required")
            return failed
        if not 0 < 2 * self.k2:
            failed.append("0 < 2*k2")
        if not 2 * self.k2 <= self.k3:
            failed.append("2*k2 <= k3")
        if not self.k3 < 0.5:
            failed.append("k3 < 1/2")
        if not self.k2 * self.alpha <= 1 - 2 * self.alpha:
            failed.append("k2 * alpha <= 1 - 2*alpha")
        return failed

    def violations_bipartite(self) -> List[str]:
        """이분 그래프 분석 조건 중 성립하지 않는 것들"""
        failed = self._threshold_violations()
        if not self.k1 < 1:
            failed.append("k1 < 1")
        return failed

    def validate(self, setting: GraphSetting) -> 'RoundingParams':
        """조건을 검사하고 위반 시 ParameterError를 발생시킵니다.

        Args:
            setting: complete 또는 bipartite

        Returns:
            RoundingParams: 자기 자신
        """
        failed = self.violations_complete() if setting == "complete" else self.violations_bipartite()
        if failed:
            raise ParameterError(f"{setting} 라운딩 파라미터 조건 위반: {', '.join(failed)}")
        return self

    def to_dict(self) -> Dict:
        return {"alpha": self.alpha, "gamma": self.gamma, "k1": self.k1, "k2": self.k2, "k3": self.k3}

    @classmethod
    def from_dict(cls, data: Dict) -> 'RoundingParams':
        return cls(
            alpha=float(data["alpha"]),
            gamma=float(data["gamma"]),
            k1=float(data["k1"]),
            k2=None if data.get("k2") is None else float(data["k2"]),
            k3=None if data.get("k3") is None else float(data["k3"]),
        )


@dataclass(frozen=True)
class ClusterEmission:
    """라운딩 한 단계에서 출력된 클러스터"""
    kind: EmissionKind
    pivot: int
    members: Tuple[int, ...]      # 정렬된 클러스터 원소
    ball: Tuple[int, ...]         # T_u
    core: Tuple[int, ...]         # T*_u
    survivors: Tuple[int, ...]    # 출력 직전의 S

    def outside(self) -> Tuple[int, ...]:
        """출력 후에도 남아 있는 정점 (S에서 클러스터를 뺀 것)"""
        members = set(self.members)
        return tuple(v for v in self.survivors if v not in members)


@dataclass
class RoundingTrace:
    """라운딩 실행 기록"""
    setting: GraphSetting
    vertex_count: int
    emissions: List[ClusterEmission] = field(default_factory=list)

    def clusters(self) -> List[List[int]]:
        return [list(e.members) for e in self.emissions]


@dataclass(frozen=True)
class AuditEntry:
    """(Type 2 클러스터, 바깥 정점 z) 쌍의 교차 간선 점검 결과"""
    emission_index: int
    pivot: int
    z: int
    cluster_cost: int             # 교차 간선 중 출력 클러스터링에서 오류인 수
    lp_cost: float                # 교차 간선 LP-cost 합
    bound: float                  # max{1/(1-2α), 2/α}
    violated: bool

    def to_dict(self) -> Dict:
        return {
            "emission_index": self.emission_index,
            "pivot": self.pivot,
            "z": self.z,
            "cluster_cost": self.cluster_cost,
            "lp_cost": self.lp_cost,
            "bound": self.bound,
            "violated": self.violated,
        }


@dataclass
class AuditReport:
    """교차 간선 감사 보고서"""
    bound: float
    entries: List[AuditEntry] = field(default_factory=list)

    @property
    def violations(self) -> List[AuditEntry]:
        return [entry for entry in self.entries if entry.violated]

    @property
    def max_ratio(self) -> Optional[float]:
        """LP-cost가 양수인 항목 중 최대 cluster_cost / lp_cost"""
        ratios = [e.cluster_cost / e.lp_cost for e in self.entries if e.lp_cost > 0]
        return max(ratios) if ratios else None


@dataclass(frozen=True)
class VertexBoundViolation:
    """정점별 보장 위반"""
    vertex: int
    rounded: float
    fractional: float

    def to_dict(self) -> Dict:
        return {"vertex": self.vertex, "rounded": self.rounded, "fractional": self.fractional}
