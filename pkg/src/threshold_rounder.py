"""임계값 피벗 라운딩 (완전 그래프, 완전 이분 그래프)"""
from typing import List, Optional, Tuple

import numpy as np

import config
from src.clustering_core import error_vector, validate_fractional
from src.exceptions import DimensionMismatchError, ParameterError
from src.models.clustering import Clustering, FractionalClustering
from src.models.rounding import ClusterEmission, RoundingParams, RoundingTrace, VertexBoundViolation
from src.models.signed_graph import SignedBipartiteGraph, SignedCompleteGraph, SignedGraph
from src.rounding_params import default_params_bipartite, default_params_complete
from src.utils.log_manager import LogCategory, LogManager

EPS = config.THRESHOLD_TOLERANCE


def _check_inputs(g: SignedGraph, x: FractionalClustering, p: RoundingParams, setting: str, tolerance: float):
    if x.vertex_count != g.vertex_count:
        raise DimensionMismatchError(
            f"분수 클러스터링 크기({x.vertex_count})가 그래프 정점 수({g.vertex_count})와 다릅니다."
        )
    p.validate(setting)
    violations = validate_fractional(x, tolerance)
    if violations:
        first = violations[0]
        raise ParameterError(
            f"유효하지 않은 분수 클러스터링: 위반 {len(violations)}건 (첫 위반 {first.kind} {first.vertices}, {first.slack:.3g})"
        )


def _members(mask: np.ndarray) -> Tuple[int, ...]:
    return tuple(np.flatnonzero(mask).tolist())


def _pivot_rounds(
    distances: np.ndarray,
    alive: np.ndarray,
    pivot_side: np.ndarray,
    core_side: np.ndarray,
    branch_side: np.ndarray,
    p: RoundingParams,
    emissions: Optional[List[ClusterEmission]],
) -> List[List[int]]:
    """pivot_side의 정점이 남아 있는 동안 피벗 라운딩을 반복합니다.

    Args:
        distances: 거리 행렬
        alive: 남은 정점 S (제자리 갱신)
        pivot_side: 피벗 후보 정점
        core_side: T*_u에 들어갈 수 있는 정점
        branch_side: 분기 판정 합에 들어가는 정점
        p: 라운딩 파라미터
        emissions: None이 아니면 출력 기록을 추가

    Returns:
        List[List[int]]: 출력된 클러스터 목록
    """
    n = distances.shape[0]
    not_self = ~np.eye(n, dtype=bool)
    near_alpha = (distances <= p.alpha + EPS) & not_self
    near_gamma = (distances <= p.gamma + EPS) & not_self
    clusters: List[List[int]] = []

    while (alive & pivot_side).any():
        ball = near_alpha & alive[None, :]
        core = near_gamma & (alive & core_side)[None, :]
        counts = np.where(alive & pivot_side, core.sum(axis=1), -1)
        u = int(np.argmax(counts))

        ball_u = ball[u]
        branch = ball_u & branch_side
        size = int(branch.sum())
        total = float(distances[u, branch].sum())
        if total >= p.alpha * size / 2.0 - EPS:
            kind = "type1"
            cluster = np.zeros(n, dtype=bool)
            cluster[u] = True
        else:
            kind = "type2"
            cluster = ball_u.copy()
            cluster[u] = True

        if emissions is not None:
            emissions.append(ClusterEmission(
                kind=kind,
                pivot=u,
                members=_members(cluster),
                ball=_members(ball_u),
                core=_members(core[u]),
                survivors=_members(alive),
            ))
        clusters.append(list(_members(cluster)))
        alive &= ~cluster
    return clusters


def round_complete(
    g: SignedCompleteGraph,
    x: FractionalClustering,
    p: Optional[RoundingParams] = None,
    record_trace: bool = False,
    tolerance: float = config.TRIANGLE_TOLERANCE
) -> Tuple[Clustering, Optional[RoundingTrace]]:
    """완전 그래프 임계값 피벗 라운딩

    매 단계 |T*_u|가 최대인 피벗(동점이면 가장 작은 번호)을 고르고,
    Σ_{w∈T_u} x_uw ≥ α|T_u|/2 이면 {u}, 아니면 {u} ∪ T_u를 출력합니다.

    Args:
        g: 부호 완전 그래프
        x: 분수 클러스터링
        p: 라운딩 파라미터 (기본값: 완전 그래프 기본값)
        record_trace: True이면 실행 기록을 함께 반환

    Returns:
        Tuple[Clustering, Optional[RoundingTrace]]: 클러스터링과 실행 기록
    """
    p = p or default_params_complete()
    _check_inputs(g, x, p, "complete", tolerance)
    n = g.vertex_count
    trace = RoundingTrace(setting="complete", vertex_count=n) if record_trace else None
    everyone = np.ones(n, dtype=bool)
    clusters = _pivot_rounds(
        x.distances, everyone.copy(), everyone, everyone, everyone, p,
        trace.emissions if trace else None,
    )
    return Clustering.from_clusters(clusters, n), trace


def round_bipartite(
    g: SignedBipartiteGraph,
    x: FractionalClustering,
    p: Optional[RoundingParams] = None,
    record_trace: bool = False,
    tolerance: float = config.TRIANGLE_TOLERANCE
) -> Tuple[Clustering, Optional[RoundingTrace]]:
    """완전 이분 그래프 임계값 피벗 라운딩

    피벗은 V1 ∩ S에서만 고르고 T*_u는 V2 ∩ S, 분기 판정은 V2 ∩ T_u 위에서 합니다.
    V1이 모두 소진되면 남은 V2 정점은 각각 단일 클러스터가 됩니다.
    """
    p = p or default_params_bipartite()
    _check_inputs(g, x, p, "bipartite", tolerance)
    n = g.vertex_count
    trace = RoundingTrace(setting="bipartite", vertex_count=n) if record_trace else None
    first_side = np.arange(n) < g.n1
    alive = np.ones(n, dtype=bool)
    clusters = _pivot_rounds(
        x.distances, alive, first_side, ~first_side, ~first_side, p,
        trace.emissions if trace else None,
    )
    for v in np.flatnonzero(alive).tolist():
        if trace is not None:
            trace.emissions.append(ClusterEmission(
                kind="singleton", pivot=v, members=(v,), ball=(), core=(), survivors=_members(alive),
            ))
        clusters.append([v])
        alive[v] = False
    return Clustering.from_clusters(clusters, n), trace


def check_per_vertex_bound(
    g: SignedGraph,
    x: FractionalClustering,
    c: Clustering,
    ratio: float,
    tolerance: float = config.BOUND_TOLERANCE
) -> List[VertexBoundViolation]:
    """보장 정점 중 errvec(C)_v > ratio · errvec(x)_v + tolerance 인 정점 목록"""
    rounded = error_vector(g, c).errors
    fractional = error_vector(g, x).errors
    violations = []
    for v in g.guaranteed_vertices().tolist():
        if rounded[v] > ratio * fractional[v] + tolerance:
            violations.append(VertexBoundViolation(vertex=v, rounded=float(rounded[v]), fractional=float(fractional[v])))
    return violations


def dump_trace(trace: RoundingTrace) -> str:
    """골든 테스트용 실행 기록 덤프 (출력 클러스터마다 한 줄)"""
    lines = []
    for emission in trace.emissions:
        if emission.kind == "type2":
            members = ",".join(str(v) for v in emission.members)
            lines.append(f"type2 pivot={emission.pivot} members={members}")
        else:
            lines.append(f"{emission.kind} pivot={emission.pivot}")
    return "\n".join(lines) + ("\n" if lines else "")


class ThresholdRounder:
    """그래프 종류에 맞는 라운딩을 실행하고 결과를 기록하는 클래스"""

    def __init__(self, params: Optional[RoundingParams] = None, log_manager: Optional[LogManager] = None):
        """
        Args:
            params: 라운딩 파라미터 (None이면 그래프 종류별 기본값)
            log_manager: 로그 매니저
        """
        self.params = params
        self.log_manager = log_manager

    def round(
        self,
        g: SignedGraph,
        x: FractionalClustering,
        record_trace: bool = False,
        tolerance: float = config.TRIANGLE_TOLERANCE
    ) -> Tuple[Clustering, Optional[RoundingTrace]]:
        try:
            if isinstance(g, SignedBipartiteGraph):
                clustering, trace = round_bipartite(g, x, self.params, record_trace, tolerance)
            else:
                clustering, trace = round_complete(g, x, self.params, record_trace, tolerance)

            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.ROUNDING,
                    message="라운딩 완료",
                    data={"graph": g.describe(), "clusters": clustering.cluster_count}
                )
            return clustering, trace

        except Exception as e:
            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.ERROR,
                    message=f"라운딩 실패: {str(e)}",
                    data={"graph": g.describe()}
                )
            raise
