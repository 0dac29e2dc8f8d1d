"""클러스터링, 분수 클러스터링, 오류 벡터와 목적 함수"""
from typing import List, Union

import numpy as np

import config
from src.exceptions import DimensionMismatchError, ParameterError
from src.models.clustering import Clustering, ErrorVector, FractionalClustering, Objective, Violation
from src.models.signed_graph import SignedGraph

ClusteringLike = Union[Clustering, FractionalClustering]


def clustering_to_fractional(c: Clustering) -> FractionalClustering:
    """같은 클러스터면 0, 아니면 1인 거리 행렬로 변환합니다."""
    return FractionalClustering((~c.same_cluster_matrix()).astype(np.float64))


def _as_fractional(x: ClusteringLike) -> FractionalClustering:
    if isinstance(x, Clustering):
        return clustering_to_fractional(x)
    return x


def _check_size(g: SignedGraph, x: FractionalClustering):
    if x.vertex_count != g.vertex_count:
        raise DimensionMismatchError(
            f"분수 클러스터링 크기({x.vertex_count})가 그래프 정점 수({g.vertex_count})와 다릅니다."
        )


def error_vector(g: SignedGraph, x: ClusteringLike) -> ErrorVector:
    """errvec(x)_v = Σ_{w∈N⁺(v)} x_vw + Σ_{w∈N⁻(v)} (1 − x_vw)

    Args:
        g: 부호 그래프
        x: 분수 클러스터링 또는 이산 클러스터링

    Returns:
        ErrorVector: 전체 정점에 대한 오류 벡터 (이분 그래프는 반대쪽 이웃만 합산)
    """
    x = _as_fractional(x)
    _check_size(g, x)
    signs = g.sign_matrix()
    distances = x.distances
    errors = np.where(signs > 0, distances, 0.0).sum(axis=1) + np.where(signs < 0, 1.0 - distances, 0.0).sum(axis=1)
    return ErrorVector(errors)


def lp_cost(g: SignedGraph, x: ClusteringLike, u: int, v: int) -> float:
    """+ 간선은 x_uv, - 간선은 1 - x_uv"""
    x = _as_fractional(x)
    _check_size(g, x)
    if not g.has_pair(u, v):
        raise DimensionMismatchError(f"그래프에 없는 쌍: ({u}, {v})")
    distance = x.distance(u, v)
    return distance if g.is_positive(u, v) else 1.0 - distance


def evaluate_objective(f: Objective, e: Union[ErrorVector, np.ndarray]) -> float:
    """오류 벡터에 목적 함수를 적용합니다.

    Args:
        f: 목적 함수
        e: 오류 벡터

    Returns:
        float: l1-mean = 평균, lp = p-노름, linf = 최댓값 (빈 벡터는 0)
    """
    values = np.abs(e.errors if isinstance(e, ErrorVector) else np.asarray(e, dtype=np.float64))
    if f.kind == "lp" and (f.p is None or f.p < 1):
        raise ParameterError(f"lp 목적 함수는 p >= 1 이어야 합니다: p={f.p}")
    if values.size == 0:
        return 0.0
    if f.kind == "linf":
        return float(values.max())
    if f.kind == "l1-mean":
        return float(values.sum() / values.size)
    peak = values.max()
    if peak == 0:
        return 0.0
    # 큰 p에서의 오버플로 방지를 위해 최댓값으로 정규화
    return float(peak * np.sum((values / peak) ** f.p) ** (1.0 / f.p))


def objective_on_graph(g: SignedGraph, f: Objective, e: Union[ErrorVector, np.ndarray]) -> float:
    """보장이 적용되는 정점(완전 그래프는 전체, 이분 그래프는 V1)만으로 목적 함수를 계산합니다."""
    values = e.errors if isinstance(e, ErrorVector) else np.asarray(e, dtype=np.float64)
    if values.shape[0] != g.vertex_count:
        raise DimensionMismatchError(f"오류 벡터 길이({values.shape[0]})가 정점 수({g.vertex_count})와 다릅니다.")
    return evaluate_objective(f, values[g.guaranteed_vertices()])


def validate_fractional(x: FractionalClustering, tolerance: float = config.TRIANGLE_TOLERANCE) -> List[Violation]:
    """상자 제약과 삼각 부등식 위반 목록

    삼각 위반 (v, w, z)는 v < z 이고 x_vz > x_vw + x_wz + tolerance 인 경우입니다.
    """
    d = x.distances
    n = x.vertex_count
    violations: List[Violation] = []

    iu = np.triu_indices(n, k=1)
    values = d[iu]
    for index in np.flatnonzero((values < -tolerance) | (values > 1.0 + tolerance)).tolist():
        value = float(values[index])
        slack = -value if value < 0 else value - 1.0
        violations.append(Violation("box", (int(iu[0][index]), int(iu[1][index])), slack))

    if n >= 3:
        # excess[v, w, z] = x_vz - x_vw - x_wz
        excess = d[:, None, :] - d[:, :, None] - d[None, :, :]
        idx = np.arange(n)
        valid = (idx[:, None, None] < idx[None, None, :]) \
            & (idx[:, None, None] != idx[None, :, None]) \
            & (idx[None, :, None] != idx[None, None, :])
        for v, w, z in np.argwhere(valid & (excess > tolerance)).tolist():
            violations.append(Violation("triangle", (v, w, z), float(excess[v, w, z])))
    return violations
