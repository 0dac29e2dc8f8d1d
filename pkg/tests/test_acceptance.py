"""인스턴스 계열 단위의 종단 검사

큰 스윕은 slow 마커로 분리합니다 (pytest -m slow).
"""
import itertools

import numpy as np
import pytest

from src.acn_baseline import acn_minimax_gap
from src.clustering_core import error_vector, objective_on_graph
from src.cross_edge_audit import audit_cross_edge_bound
from src.dual_certificate import matching_dual_certificate, star_dual_certificate, verify_dual_certificate
from src.exact_oracle import exact_best, exact_best_max_agree
from src.lp_builder import build_l1_lp, build_minimax_lp, fractional_from_solution
from src.models.clustering import Clustering, Objective
from src.rounding_params import default_params_bipartite, default_params_complete, ratio_constant
from src.signed_graphs import gen_matching_instance, gen_random_bipartite, gen_random_complete, gen_star_instance
from src.simplex_solver import solve
from src.threshold_rounder import check_per_vertex_bound, round_bipartite, round_complete

LP_TOLERANCE = 1e-7


def _solve_point(lp, backend="simplex"):
    solution = solve(lp, backend=backend)
    assert solution.is_optimal
    return solution, fractional_from_solution(lp, solution)


@pytest.mark.parametrize("t", [3, 4, 5, 6])
def test_matching_family(t):
    g = gen_matching_instance(t)
    solution, x = _solve_point(build_minimax_lp(g))
    assert solution.objective == pytest.approx(1.0, abs=1e-6)
    assert np.abs(solution.values[:-1]).max() <= 1e-6

    clustering, _ = round_complete(g, x, tolerance=LP_TOLERANCE)
    assert clustering == Clustering.giant(2 * t)
    assert error_vector(g, clustering).integral().max() == 1
    if t <= 5:
        assert exact_best(g, Objective.linf()).value == 1.0


@pytest.mark.slow
def test_matching_family_exact_t6():
    assert exact_best(gen_matching_instance(6), Objective.linf()).value == 1.0


def _star_point(lp, n):
    """x_{u*v} = 1/3, 잎 사이 2/3, M = n/3 인 점"""
    values = np.zeros(lp.column_count)
    for (u, v), column in lp.pair_columns.items():
        values[column] = 1 / 3 if u == 0 else 2 / 3
    values[-1] = n / 3
    return values


@pytest.mark.parametrize("n", range(3, 9))
def test_star_family(n):
    g = gen_star_instance(n)
    lp = build_minimax_lp(g)
    solution, x = _solve_point(lp)
    assert solution.objective == pytest.approx(n / 3, abs=1e-6)

    point = _star_point(lp, n)
    assert lp.max_violation(point) <= 1e-9
    assert lp.objective_value(point) == pytest.approx(solution.objective, abs=1e-6)
    # n = 3 에서는 {0,2,3},{1} 같은 정수 점도 최적이라 해가 유일하지 않음
    if n >= 4:
        for (u, v) in g.pairs():
            expected = 1 / 3 if u == 0 else 2 / 3
            assert abs(x.distance(u, v) - expected) <= 1e-5
    assert exact_best_max_agree(g).value == (n + 1) // 2


@pytest.mark.parametrize("t", range(2, 7))
def test_matching_certificate_meets_primal(t):
    g = gen_matching_instance(t)
    verdict = verify_dual_certificate(g, matching_dual_certificate(t))
    solution, _ = _solve_point(build_minimax_lp(g))
    assert verdict.feasible
    assert verdict.objective == pytest.approx(solution.objective, abs=1e-7)


@pytest.mark.parametrize("n", range(2, 9))
def test_star_certificate_meets_primal(n):
    g = gen_star_instance(n)
    verdict = verify_dual_certificate(g, star_dual_certificate(n))
    solution, _ = _solve_point(build_minimax_lp(g))
    assert verdict.feasible
    assert verdict.objective == pytest.approx(solution.objective, abs=1e-7)


def _complete_case(n, p_plus, seed, backend):
    g = gen_random_complete(n, p_plus, seed)
    _, x = _solve_point(build_minimax_lp(g), backend)
    clustering, trace = round_complete(g, x, record_trace=True, tolerance=LP_TOLERANCE)
    c = ratio_constant("complete", default_params_complete())
    assert check_per_vertex_bound(g, x, clustering, c) == []
    assert audit_cross_edge_bound(g, x, trace).violations == []


def _bipartite_case(n1, n2, p_plus, seed, backend):
    g = gen_random_bipartite(n1, n2, p_plus, seed)
    _, x = _solve_point(build_l1_lp(g), backend)
    clustering, trace = round_bipartite(g, x, record_trace=True, tolerance=LP_TOLERANCE)
    c = ratio_constant("bipartite", default_params_bipartite())
    assert c <= 10
    assert check_per_vertex_bound(g, x, clustering, c) == []
    assert audit_cross_edge_bound(g, x, trace).violations == []


@pytest.mark.parametrize("n, p_plus, seed", list(itertools.product([6, 8], [0.2, 0.5, 0.8], range(2))))
def test_complete_guarantee_small(n, p_plus, seed):
    _complete_case(n, p_plus, seed, "simplex")


@pytest.mark.slow
@pytest.mark.parametrize("n, p_plus, seed", list(itertools.product(range(6, 15), [0.2, 0.5, 0.8], range(8))))
def test_complete_guarantee_full(n, p_plus, seed):
    _complete_case(n, p_plus, seed, "highs")


@pytest.mark.parametrize("n1, n2, p_plus, seed", list(itertools.product([2, 4], [3, 4], [0.2, 0.5, 0.8], range(2))))
def test_bipartite_guarantee_small(n1, n2, p_plus, seed):
    _bipartite_case(n1, n2, p_plus, seed, "simplex")


@pytest.mark.slow
@pytest.mark.parametrize("n1, n2, p_plus, seed", list(itertools.product([3, 6, 10], [3, 6, 10], [0.2, 0.5, 0.8], range(8))))
def test_bipartite_guarantee_full(n1, n2, p_plus, seed):
    _bipartite_case(n1, n2, p_plus, seed, "highs")


@pytest.mark.parametrize("objective", [Objective.linf(), Objective.l1_mean()])
@pytest.mark.parametrize("n, seed", [(5, 0), (7, 1), (8, 2)])
def test_oracle_sandwich(objective, n, seed):
    g = gen_random_complete(n, 0.5, seed)
    lp = build_minimax_lp(g) if objective.kind == "linf" else build_l1_lp(g)
    _, x = _solve_point(lp)
    lp_value = objective_on_graph(g, objective, error_vector(g, x))
    exact = exact_best(g, objective).value
    clustering, _ = round_complete(g, x, tolerance=LP_TOLERANCE)
    rounded = objective_on_graph(g, objective, error_vector(g, clustering))
    assert lp_value <= exact + 1e-6
    assert exact <= rounded + 1e-6


@pytest.mark.parametrize("t", range(2, 9))
def test_acn_gap(t):
    summary = acn_minimax_gap(t, 100, seed=t)
    assert summary.worst_errors == [2 * t - 2] * 100
    assert summary.ratio == 2 * t - 2
