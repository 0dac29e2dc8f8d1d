"""ACN 무작위 피벗 기준선"""
from typing import List, Optional

import numpy as np

from src.clustering_core import error_vector
from src.exceptions import ParameterError
from src.models.clustering import Clustering
from src.models.report import AcnGapSummary
from src.models.signed_graph import SignedGraph
from src.signed_graphs import gen_matching_instance
from src.utils.log_manager import LogCategory, LogManager


def trial_seeds(seed: int, trials: int) -> List[int]:
    """하나의 시드에서 시행별 독립 시드를 파생합니다."""
    sequence = np.random.SeedSequence(int(seed))
    return [int(s) for s in sequence.generate_state(trials, dtype=np.uint64)]


def acn_cluster(g: SignedGraph, seed: int) -> Clustering:
    """남은 정점 S에서 균일하게 피벗 v를 뽑아 ({v} ∪ N⁺(v)) ∩ S를 클러스터로 출력합니다.

    Args:
        g: 부호 그래프
        seed: 64비트 시드 (Philox 생성기)

    Returns:
        Clustering: 시드에 대해 결정적인 분할
    """
    rng = np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))
    n = g.vertex_count
    positive = g.sign_matrix() > 0
    alive = np.ones(n, dtype=bool)
    labels = np.empty(n, dtype=np.int64)
    cluster_id = 0
    while alive.any():
        remaining = np.flatnonzero(alive)
        v = int(remaining[rng.integers(remaining.shape[0])])
        cluster = positive[v] & alive
        cluster[v] = True
        labels[cluster] = cluster_id
        alive &= ~cluster
        cluster_id += 1
    return Clustering(labels)


def worst_vertex_errors(g: SignedGraph, c: Clustering) -> int:
    errors = error_vector(g, c).integral()
    return int(errors[g.guaranteed_vertices()].max())


def acn_minimax_gap(t: int, trials: int, seed: int, log_manager: Optional[LogManager] = None) -> AcnGapSummary:
    """M_t에서 ACN을 trials번 실행한 최악 정점 오류 통계

    Args:
        t: 매칭 크기 (>= 2)
        trials: 시행 횟수
        seed: 기준 시드
        log_manager: 로그 매니저

    Returns:
        AcnGapSummary: 시행별 최악 정점 오류와 최적값(1) 대비 비율
    """
    if t < 2:
        raise ParameterError(f"t는 2 이상이어야 합니다: {t}")
    if trials < 1:
        raise ParameterError(f"trials는 1 이상이어야 합니다: {trials}")
    g = gen_matching_instance(t)
    worst = [worst_vertex_errors(g, acn_cluster(g, s)) for s in trial_seeds(seed, trials)]
    summary = AcnGapSummary(t=t, trials=trials, worst_errors=worst)
    if log_manager:
        log_manager.log(
            category=LogCategory.BASELINE,
            message="ACN 최악 정점 오류 통계",
            data=summary.to_dict()
        )
    return summary
