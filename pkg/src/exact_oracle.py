"""소규모 인스턴스용 정확 탐색

모든 집합 분할을 제한 성장 문자열(RGS) 사전순으로 열거하고 배치 단위로 평가합니다.
동점이면 사전순으로 가장 앞선 RGS를 택합니다.
"""
import time
from typing import Callable, Iterator, Optional, Tuple

import numpy as np

import config
from src.clustering_core import error_vector
from src.exceptions import OracleSizeError, ParameterError
from src.models.clustering import Clustering, Objective
from src.models.report import ExactResult, ToleranceMap, TPerfectResult
from src.models.signed_graph import SignedGraph
from src.utils.log_manager import LogCategory, LogManager

SUFFIX_LENGTH = 6
TIE_TOLERANCE = 1e-12


def _extend(block: np.ndarray, maxima: np.ndarray, steps: int) -> Tuple[np.ndarray, np.ndarray]:
    """각 RGS 접두사를 steps 자리만큼 사전순으로 확장합니다."""
    for _ in range(steps):
        counts = maxima.astype(np.int64) + 2
        parent = np.repeat(np.arange(block.shape[0]), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        digits = (np.arange(parent.size) - starts).astype(block.dtype)
        block = np.hstack([block[parent], digits[:, None]])
        maxima = np.maximum(maxima[parent], digits)
    return block, maxima


def rgs_batches(n: int, chunk_size: int = config.EXACT_CHUNK_SIZE) -> Iterator[np.ndarray]:
    """길이 n의 모든 RGS를 사전순으로, 최대 chunk_size 행의 배치로 생성합니다."""
    if n < 1:
        raise ParameterError(f"n은 1 이상이어야 합니다: {n}")
    prefix_length = max(n - SUFFIX_LENGTH, 1)
    prefixes, prefix_maxima = _extend(np.zeros((1, 1), dtype=np.int8), np.zeros(1, dtype=np.int8), prefix_length - 1)
    for i in range(prefixes.shape[0]):
        block, _ = _extend(prefixes[i:i + 1], prefix_maxima[i:i + 1], n - prefix_length)
        for start in range(0, block.shape[0], chunk_size):
            yield block[start:start + chunk_size]


def enumerate_partitions(n: int) -> Iterator[Clustering]:
    """n 정점의 모든 분할을 RGS 사전순으로 순회합니다 (개수는 벨 수 B(n))."""
    for batch in rgs_batches(n):
        for labels in batch:
            yield Clustering(labels)


def _batch_errors(g: SignedGraph, labels: np.ndarray) -> np.ndarray:
    """배치 내 각 분할의 정수 오류 벡터 (배치 크기 x 정점 수)"""
    signs = g.sign_matrix()
    positive = signs > 0
    negative = signs < 0
    same = labels[:, :, None] == labels[:, None, :]
    return (positive[None] & ~same).sum(axis=2) + (negative[None] & same).sum(axis=2)


def _batch_objective(f: Objective, errors: np.ndarray) -> np.ndarray:
    values = errors.astype(np.float64)
    if values.shape[1] == 0:
        return np.zeros(values.shape[0])
    if f.kind == "linf":
        return values.max(axis=1)
    if f.kind == "l1-mean":
        return values.sum(axis=1) / values.shape[1]
    peak = values.max(axis=1)
    scale = np.where(peak > 0, peak, 1.0)
    return peak * np.sum((values / scale[:, None]) ** f.p, axis=1) ** (1.0 / f.p)


def _check_size(g: SignedGraph, max_vertices: int):
    limit = min(max_vertices, config.ORACLE_HARD_CAP)
    if g.vertex_count > limit:
        raise OracleSizeError(f"정확 탐색 크기 한도 초과: n={g.vertex_count} > {limit}")


def _search(
    g: SignedGraph,
    score: Callable[[np.ndarray], np.ndarray],
    max_vertices: int,
    label: str,
    log_manager: Optional[LogManager]
) -> ExactResult:
    """score(오류 벡터 배치)를 최소화하는 첫 분할을 찾습니다."""
    try:
        _check_size(g, max_vertices)
        started = time.perf_counter()
        guaranteed = g.guaranteed_vertices()
        best_value = np.inf
        best_labels = None
        examined = 0
        for batch in rgs_batches(g.vertex_count):
            values = score(_batch_errors(g, batch)[:, guaranteed])
            low = values.min()
            if low < best_value - TIE_TOLERANCE:
                index = int(np.flatnonzero(values <= low + TIE_TOLERANCE)[0])
                best_value = float(values[index])
                best_labels = batch[index].copy()
            examined += batch.shape[0]

        result = ExactResult(clustering=Clustering(best_labels), value=best_value, examined=examined)
        if log_manager:
            log_manager.log(
                category=LogCategory.ORACLE,
                message=f"정확 탐색 완료: {label}",
                data={
                    "graph": g.describe(),
                    "value": result.value,
                    "examined": examined,
                    "elapsed": time.perf_counter() - started,
                }
            )
        return result

    except Exception as e:
        if log_manager:
            log_manager.log(
                category=LogCategory.ERROR,
                message=f"정확 탐색 실패: {str(e)}",
                data={"graph": g.describe(), "objective": label}
            )
        raise


def exact_best(
    g: SignedGraph,
    f: Objective,
    max_vertices: int = config.ORACLE_MAX_VERTICES,
    log_manager: Optional[LogManager] = None
) -> ExactResult:
    """모든 분할 중 목적 함수(보장 정점 기준)가 최소인 클러스터링

    Raises:
        OracleSizeError: 정점 수가 한도를 넘는 경우
    """
    return _search(g, lambda errors: _batch_objective(f, errors), max_vertices, f.label, log_manager)


def _edge_degrees(g: SignedGraph) -> np.ndarray:
    return g.edge_mask().sum(axis=1)


def exact_best_max_agree(
    g: SignedGraph,
    max_vertices: int = config.ORACLE_MAX_VERTICES,
    log_manager: Optional[LogManager] = None
) -> ExactResult:
    """최악 정점의 올바른 간선 수를 최대화하는 클러스터링 (value는 그 최대값)"""
    degrees = _edge_degrees(g)[g.guaranteed_vertices()]
    result = _search(g, lambda errors: -(degrees[None, :] - errors).min(axis=1), max_vertices, "max-agree", log_manager)
    result.value = -result.value + 0.0
    return result


def max_agree_value(g: SignedGraph, c: Clustering) -> int:
    """보장 정점 중 올바른 간선 수의 최솟값"""
    errors = error_vector(g, c).integral()
    correct = _edge_degrees(g) - errors
    return int(correct[g.guaranteed_vertices()].min())


def is_t_perfect(g: SignedGraph, c: Clustering, t: ToleranceMap) -> TPerfectResult:
    """보장 정점 v마다 오류 간선 수가 t_v 이하인지 판정합니다.

    Raises:
        ParameterError: 허용 오류 수가 없는 보장 정점이 있는 경우
    """
    guaranteed = g.guaranteed_vertices().tolist()
    missing = [v for v in guaranteed if v not in t]
    if missing:
        raise ParameterError(f"허용 오류 수가 지정되지 않은 정점: {missing}")
    errors = error_vector(g, c).integral()
    for v in guaranteed:
        if errors[v] > t[v]:
            return TPerfectResult(perfect=False, first_violation=v)
    return TPerfectResult(perfect=True)


def star_clustering(n: int, t: int) -> Clustering:
    """G_n에서 u*(정점 0)와 정점 1..t를 묶고 나머지는 단일 클러스터로 둔 클러스터링"""
    if not 0 <= t <= n:
        raise ParameterError(f"t는 0 이상 n 이하여야 합니다: t={t}, n={n}")
    labels = np.concatenate([np.zeros(t + 1, dtype=np.int64), np.arange(1, n - t + 1)])
    return Clustering(labels)
