"""Type 2 클러스터의 교차 간선 비용 감사

Type 2 클러스터 C와 출력 직전 S에 남아 있던 C 바깥 정점 z에 대해,
z와 C 사이 교차 간선의 cluster-cost 합이 max{1/(1−2α), 2/α} · LP-cost 합 이하인지 점검합니다.
이분 그래프는 z ∈ V1, 교차 간선은 C ∩ V2 쪽만 봅니다.
"""
from typing import Optional

import numpy as np

import config
from src.exceptions import DimensionMismatchError
from src.models.clustering import FractionalClustering
from src.models.rounding import AuditEntry, AuditReport, RoundingParams, RoundingTrace
from src.models.signed_graph import SignedBipartiteGraph, SignedGraph
from src.rounding_params import cross_edge_bound, default_params
from src.utils.log_manager import LogCategory, LogManager


def _check_trace(g: SignedGraph, x: FractionalClustering, trace: RoundingTrace):
    n = g.vertex_count
    if x.vertex_count != n or trace.vertex_count != n:
        raise DimensionMismatchError(
            f"크기 불일치: 그래프 {n}, 분수 클러스터링 {x.vertex_count}, 실행 기록 {trace.vertex_count}"
        )
    if trace.setting != g.kind:
        raise DimensionMismatchError(f"실행 기록({trace.setting})과 그래프({g.kind}) 종류가 다릅니다.")
    covered = sorted(v for emission in trace.emissions for v in emission.members)
    if covered != list(range(n)):
        raise DimensionMismatchError("실행 기록의 클러스터가 정점 집합의 분할이 아닙니다.")


def audit_cross_edge_bound(
    g: SignedGraph,
    x: FractionalClustering,
    trace: RoundingTrace,
    p: Optional[RoundingParams] = None,
    tolerance: float = config.BOUND_TOLERANCE,
    log_manager: Optional[LogManager] = None
) -> AuditReport:
    """교차 간선 비용 상한을 점검합니다.

    Args:
        g: 부호 그래프
        x: 라운딩에 사용한 분수 클러스터링
        trace: 같은 (g, x)로 얻은 라운딩 실행 기록
        p: 라운딩 파라미터 (None이면 그래프 종류별 기본값)
        tolerance: 비교 허용 오차
        log_manager: 로그 매니저

    Returns:
        AuditReport: (Type 2 클러스터, z) 쌍별 점검 결과
    """
    _check_trace(g, x, trace)
    p = p or default_params(g.kind)
    bound = cross_edge_bound(p)
    signs = g.sign_matrix()
    distances = x.distances
    bipartite = isinstance(g, SignedBipartiteGraph)
    report = AuditReport(bound=bound)

    for index, emission in enumerate(trace.emissions):
        if emission.kind != "type2":
            continue
        members = np.asarray(emission.members, dtype=np.int64)
        if bipartite:
            members = members[members >= g.n1]
        for z in emission.outside():
            if bipartite and z >= g.n1:
                continue
            row_signs = signs[z, members]
            row_distances = distances[z, members]
            edges = row_signs != 0
            cluster_cost = int((row_signs > 0).sum())
            lp = float(np.where(row_signs > 0, row_distances, 1.0 - row_distances)[edges].sum())
            report.entries.append(AuditEntry(
                emission_index=index,
                pivot=emission.pivot,
                z=z,
                cluster_cost=cluster_cost,
                lp_cost=lp,
                bound=bound,
                violated=cluster_cost > bound * lp + tolerance,
            ))

    if log_manager:
        log_manager.log(
            category=LogCategory.AUDIT,
            message="교차 간선 감사 완료",
            data={"entries": len(report.entries), "violations": len(report.violations), "bound": bound}
        )
    return report
