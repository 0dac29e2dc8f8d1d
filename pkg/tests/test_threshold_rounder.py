import itertools

import numpy as np
import pytest
from scipy.sparse.csgraph import shortest_path

from src.clustering_core import error_vector, objective_on_graph, validate_fractional
from src.exceptions import DimensionMismatchError, ParameterError
from src.lp_builder import build_l1_lp, build_minimax_lp, fractional_from_solution
from src.models.clustering import Clustering, FractionalClustering, Objective
from src.models.rounding import RoundingParams
from src.models.signed_graph import SignedCompleteGraph
from src.rounding_params import default_params_bipartite, default_params_complete, ratio_constant
from src.signed_graphs import gen_matching_instance, gen_random_bipartite, gen_random_complete
from src.simplex_solver import solve
from src.threshold_rounder import (
    ThresholdRounder,
    check_per_vertex_bound,
    dump_trace,
    round_bipartite,
    round_complete,
)


def _two_pairs():
    """x_01 = x_23 = 0.05, 나머지 0.6 인 4정점 점"""
    return FractionalClustering.from_pairs(4, {(0, 1): 0.05, (2, 3): 0.05}, default=0.6)


def _all_positive(n):
    return SignedCompleteGraph(n=n, plus=np.ones(n * (n - 1) // 2, dtype=bool))


def _lp_point(g, builder=build_minimax_lp):
    lp = builder(g)
    return fractional_from_solution(lp, solve(lp, backend="simplex"))


def test_zero_point_gives_giant_cluster():
    g = gen_random_complete(6, 0.5, 2)
    clustering, _ = round_complete(g, FractionalClustering.constant(6, 0.0))
    assert clustering == Clustering.giant(6)


def test_unit_point_gives_singletons():
    g = gen_random_complete(5, 0.0, 0)
    clustering, trace = round_complete(g, FractionalClustering.constant(5, 1.0), record_trace=True)
    assert clustering == Clustering.singletons(5)
    assert [e.kind for e in trace.emissions] == ["type1"] * 5


def test_matching_lp_optimum_rounds_to_giant_cluster():
    g = gen_matching_instance(3)
    clustering, _ = round_complete(g, _lp_point(g), tolerance=1e-7)
    assert clustering == Clustering.giant(6)


def test_two_pairs_trace_golden():
    _, trace = round_complete(_all_positive(4), _two_pairs(), record_trace=True)
    assert dump_trace(trace) == "type2 pivot=0 members=0,1\ntype2 pivot=2 members=2,3\n"
    first = trace.emissions[0]
    assert first.ball == (1,)
    assert first.core == (1,)
    assert first.survivors == (0, 1, 2, 3)
    assert first.outside() == (2, 3)


def test_pivot_prefers_larger_core():
    # 정점 3은 γ 이내 이웃이 둘, 나머지는 하나 이하
    x = FractionalClustering.from_pairs(4, {(1, 3): 0.05, (2, 3): 0.05, (1, 2): 0.1}, default=0.9)
    _, trace = round_complete(_all_positive(4), x, record_trace=True)
    assert trace.emissions[0].pivot == 3
    assert trace.emissions[0].members == (1, 2, 3)


def test_heavy_ball_emits_singleton_pivot():
    # Σ x_0w = 0.45 + 0.45 >= α·2/2
    x = FractionalClustering.from_pairs(3, {(0, 1): 0.45, (0, 2): 0.45, (1, 2): 0.9}, default=1.0)
    _, trace = round_complete(_all_positive(3), x, record_trace=True)
    assert trace.emissions[0].kind == "type1"
    assert trace.emissions[0].members == (0,)


def test_single_vertex_trace_dump():
    _, trace = round_complete(_all_positive(1), FractionalClustering.constant(1, 0.0), record_trace=True)
    assert dump_trace(trace) == "type1 pivot=0\n"


def test_bipartite_unit_point_leaves_second_side_singletons():
    g = gen_random_bipartite(2, 3, 0.5, 1)
    clustering, trace = round_bipartite(g, FractionalClustering.constant(5, 1.0), record_trace=True)
    assert clustering == Clustering.singletons(5)
    assert dump_trace(trace) == (
        "type1 pivot=0\n"
        "type1 pivot=1\n"
        "singleton pivot=2\n"
        "singleton pivot=3\n"
        "singleton pivot=4\n"
    )


def test_bipartite_zero_point_gives_giant_cluster():
    g = gen_random_bipartite(2, 3, 0.5, 1)
    clustering, trace = round_bipartite(g, FractionalClustering.constant(5, 0.0), record_trace=True)
    assert clustering == Clustering.giant(5)
    assert trace.emissions[0].core == (2, 3, 4)


def test_bipartite_pivots_come_from_first_side():
    g = gen_random_bipartite(3, 3, 0.5, 5)
    _, trace = round_bipartite(g, _lp_point(g), record_trace=True, tolerance=1e-7)
    for emission in trace.emissions:
        if emission.kind != "singleton":
            assert emission.pivot < 3
        else:
            assert emission.pivot >= 3


@pytest.mark.parametrize("seed", range(3))
def test_rounding_is_deterministic(seed):
    g = gen_random_complete(6, 0.5, seed)
    x = _lp_point(g)
    first, trace_a = round_complete(g, x, record_trace=True, tolerance=1e-7)
    second, trace_b = round_complete(g, x, record_trace=True, tolerance=1e-7)
    assert first == second
    assert dump_trace(trace_a) == dump_trace(trace_b)


@pytest.mark.parametrize("seed", range(4))
def test_complete_per_vertex_bound_holds(seed):
    g = gen_random_complete(6, 0.5, seed)
    x = _lp_point(g)
    clustering, _ = round_complete(g, x, tolerance=1e-7)
    c = ratio_constant("complete", default_params_complete())
    assert check_per_vertex_bound(g, x, clustering, c) == []


@pytest.mark.parametrize("seed", range(4))
def test_bipartite_per_vertex_bound_holds(seed):
    g = gen_random_bipartite(3, 3, 0.5, seed)
    x = _lp_point(g, build_l1_lp)
    clustering, _ = round_bipartite(g, x, tolerance=1e-7)
    c = ratio_constant("bipartite", default_params_bipartite())
    assert check_per_vertex_bound(g, x, clustering, c) == []


def _random_metric(n, seed):
    """무작위 가중치의 최단 경로 거리를 1로 자른 유효한 분수 클러스터링"""
    rng = np.random.default_rng(seed)
    weights = np.triu(rng.uniform(0.01, 1.2, size=(n, n)), 1)
    distances = shortest_path(weights + weights.T, directed=False)
    return FractionalClustering(np.minimum(distances, 1.0))


@pytest.mark.parametrize("n, seed", list(itertools.product(range(6, 15, 2), range(4))))
def test_complete_bound_holds_for_any_valid_point(n, seed):
    g = gen_random_complete(n, 0.5, 100 + seed)
    x = _random_metric(n, seed)
    assert validate_fractional(x) == []
    clustering, _ = round_complete(g, x)
    c = ratio_constant("complete", default_params_complete())
    assert check_per_vertex_bound(g, x, clustering, c) == []


@pytest.mark.parametrize("objective", [Objective.linf(), Objective.l1_mean(), Objective.lp(2), Objective.lp(3)])
@pytest.mark.parametrize("n, seed", [(6, 0), (9, 1), (12, 2), (14, 3)])
def test_objective_value_transfers_through_rounding(objective, n, seed):
    g = gen_random_complete(n, 0.4, seed)
    x = _random_metric(n, 50 + seed)
    clustering, _ = round_complete(g, x)
    c = ratio_constant("complete", default_params_complete())
    rounded = objective_on_graph(g, objective, error_vector(g, clustering))
    fractional = objective_on_graph(g, objective, error_vector(g, x))
    assert rounded <= c * fractional + 1e-6 * n


@pytest.mark.parametrize("seed", range(6))
def test_bipartite_minimax_point_within_factor_ten(seed):
    g = gen_random_bipartite(5, 6, 0.5, seed)
    lp = build_minimax_lp(g)
    x = fractional_from_solution(lp, solve(lp, backend="highs"))
    clustering, _ = round_bipartite(g, x, tolerance=1e-7)
    assert ratio_constant("bipartite", default_params_bipartite()) <= 10
    assert check_per_vertex_bound(g, x, clustering, 10.0) == []


def test_per_vertex_bound_reports_violations():
    g = _all_positive(3)
    violations = check_per_vertex_bound(g, FractionalClustering.constant(3, 0.0), Clustering.singletons(3), 10.0)
    assert [v.vertex for v in violations] == [0, 1, 2]


def test_invalid_point_is_rejected():
    x = FractionalClustering.from_pairs(3, {(0, 1): 0.0, (0, 2): 0.0, (1, 2): 1.0})
    with pytest.raises(ParameterError):
        round_complete(_all_positive(3), x)


def test_invalid_params_are_rejected():
    with pytest.raises(ParameterError):
        round_complete(_all_positive(3), FractionalClustering.constant(3, 0.0), RoundingParams(0.6, 0.1, 0.7, 0.1, 0.3))


def test_size_mismatch():
    with pytest.raises(DimensionMismatchError):
        round_complete(_all_positive(3), FractionalClustering.constant(4, 0.0))


def test_rounder_dispatches_on_graph_kind(log_manager):
    rounder = ThresholdRounder(log_manager=log_manager)
    g = gen_random_bipartite(2, 2, 0.5, 0)
    clustering, trace = rounder.round(g, FractionalClustering.constant(4, 1.0), record_trace=True)
    assert trace.setting == "bipartite"
    assert clustering.cluster_count == 4
