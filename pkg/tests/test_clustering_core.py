import numpy as np
import pytest

from src.clustering_core import (
    clustering_to_fractional,
    error_vector,
    evaluate_objective,
    lp_cost,
    objective_on_graph,
    validate_fractional,
)
from src.exceptions import DimensionMismatchError, ParameterError
from src.models.clustering import Clustering, ErrorVector, FractionalClustering, Objective
from src.signed_graphs import gen_matching_instance, gen_random_bipartite, gen_random_complete, gen_star_instance
from src.models.signed_graph import SignedCompleteGraph


def test_clustering_is_canonicalized():
    assert Clustering([5, 5, 2, 7, 2]).labels.tolist() == [0, 0, 1, 2, 1]
    assert Clustering([1, 0]) == Clustering([0, 1])
    assert Clustering.from_clusters([[2], [0, 1]], 3).clusters() == [[0, 1], [2]]


def test_clustering_from_clusters_rejects_overlap_and_gaps():
    with pytest.raises(ValueError):
        Clustering.from_clusters([[0, 1], [1, 2]], 3)
    with pytest.raises(ValueError):
        Clustering.from_clusters([[0, 1]], 3)


def test_to_fractional_singletons_and_giant():
    assert np.array_equal(clustering_to_fractional(Clustering.singletons(3)).distances, 1 - np.eye(3))
    assert not clustering_to_fractional(Clustering.giant(4)).distances.any()


def test_to_fractional_two_clusters():
    x = clustering_to_fractional(Clustering.from_clusters([[0, 1], [2]], 3))
    assert x.distance(0, 1) == 0.0
    assert x.distance(0, 2) == 1.0
    assert x.distance(1, 2) == 1.0


def test_error_vector_matching_giant_is_one_everywhere():
    g = gen_matching_instance(3)
    assert error_vector(g, Clustering.giant(6)).tolist() == [1.0] * 6


def test_error_vector_singletons_equals_positive_degree():
    g = gen_random_complete(9, 0.5, 3)
    assert error_vector(g, Clustering.singletons(9)).tolist() == g.positive_degrees().tolist()


def test_error_vector_half_distances_on_positive_triangle():
    g = SignedCompleteGraph(n=3, plus=np.array([True, True, True]))
    assert error_vector(g, FractionalClustering.constant(3, 0.5)).tolist() == [1.0, 1.0, 1.0]


def test_error_vector_bipartite_counts_opposite_side_only():
    g = gen_random_bipartite(2, 3, 1.0, 0)
    errors = error_vector(g, Clustering.singletons(5))
    assert errors.tolist() == [3.0, 3.0, 2.0, 2.0, 2.0]


def test_error_vector_size_mismatch():
    with pytest.raises(DimensionMismatchError):
        error_vector(gen_star_instance(3), Clustering.giant(3))


def test_lp_cost_definition():
    g = gen_star_instance(2)
    x = FractionalClustering.constant(3, 0.3)
    assert lp_cost(g, x, 0, 1) == pytest.approx(0.3)
    assert lp_cost(g, x, 1, 2) == pytest.approx(0.7)


def test_lp_cost_unknown_pair():
    g = gen_random_bipartite(2, 2, 0.5, 1)
    with pytest.raises(DimensionMismatchError):
        lp_cost(g, FractionalClustering.constant(4, 0.5), 0, 1)


@pytest.mark.parametrize("seed", range(5))
def test_error_vector_matches_lp_cost_sums(seed):
    g = gen_random_complete(7, 0.5, seed)
    rng = np.random.default_rng(seed)
    raw = rng.random((7, 7))
    x = FractionalClustering((raw + raw.T) / 2)
    errors = error_vector(g, x)
    for v in range(7):
        expected = sum(lp_cost(g, x, v, w) for w in range(7) if w != v)
        assert errors[v] == pytest.approx(expected)
    total_edges = sum(lp_cost(g, x, u, v) for u, v in g.pairs())
    assert errors.errors.sum() == pytest.approx(2 * total_edges)


@pytest.mark.parametrize("seed", range(4))
def test_integral_error_vector_counts_error_edges(seed):
    g = gen_random_complete(8, 0.5, seed)
    c = Clustering(np.random.default_rng(seed).integers(0, 3, size=8))
    errors = error_vector(g, c).integral()
    same = c.same_cluster_matrix()
    for v in range(8):
        count = sum(
            1 for w in range(8)
            if w != v and (g.is_positive(v, w) != bool(same[v, w]))
        )
        assert errors[v] == count


def test_evaluate_objective_examples():
    assert evaluate_objective(Objective.linf(), ErrorVector([1, 1, 1, 1, 1, 1])) == 1
    assert evaluate_objective(Objective.l1_mean(), ErrorVector([2, 0, 2, 0])) == 1
    assert evaluate_objective(Objective.lp(2), ErrorVector([3, 4])) == pytest.approx(5)


def test_objective_rejects_p_below_one():
    with pytest.raises(ParameterError):
        Objective.lp(0.5)


@pytest.mark.parametrize("objective", [Objective.linf(), Objective.l1_mean(), Objective.lp(1.5), Objective.lp(3)])
def test_objective_homogeneous_and_monotone(objective):
    rng = np.random.default_rng(17)
    for _ in range(20):
        e = rng.random(6) * 5
        scale = rng.random() * 4
        assert evaluate_objective(objective, e * scale) == pytest.approx(scale * evaluate_objective(objective, e))
        bigger = e + rng.random(6)
        assert evaluate_objective(objective, e) <= evaluate_objective(objective, bigger) + 1e-12


def test_objective_parse_labels():
    assert Objective.parse("linf").label == "linf"
    assert Objective.parse("l1").label == "l1"
    assert Objective.parse("lp:2.5") == Objective.lp(2.5)
    with pytest.raises(ParameterError):
        Objective.parse("l2")


def test_objective_on_bipartite_graph_uses_first_side():
    g = gen_random_bipartite(2, 3, 1.0, 0)
    value = objective_on_graph(g, Objective.linf(), error_vector(g, Clustering.singletons(5)))
    assert value == 3.0
    mean = objective_on_graph(g, Objective.l1_mean(), np.array([1.0, 3.0, 9.0, 9.0, 9.0]))
    assert mean == 2.0


def test_validate_accepts_integral_points():
    c = Clustering.from_clusters([[0, 3], [1], [2, 4]], 5)
    assert validate_fractional(clustering_to_fractional(c)) == []


def test_validate_detects_single_triangle_violation():
    x = FractionalClustering.from_pairs(3, {(0, 1): 0.0, (0, 2): 0.0, (1, 2): 1.0})
    violations = validate_fractional(x)
    assert len(violations) == 1
    assert violations[0].kind == "triangle"
    assert violations[0].vertices == (1, 0, 2)
    assert violations[0].slack == pytest.approx(1.0)


def test_validate_constant_point_four():
    assert validate_fractional(FractionalClustering.constant(4, 0.4)) == []


def test_validate_box_violation():
    x = FractionalClustering.from_pairs(3, {(0, 1): 1.5}, default=1.0)
    kinds = {v.kind for v in validate_fractional(x)}
    assert "box" in kinds
