import numpy as np
import pytest

from src.acn_baseline import acn_cluster, acn_minimax_gap, trial_seeds, worst_vertex_errors
from src.exceptions import ParameterError
from src.models.clustering import Clustering
from src.models.signed_graph import SignedCompleteGraph
from src.signed_graphs import gen_matching_instance, gen_random_complete


@pytest.mark.parametrize("seed", [0, 7, 2**63 + 5])
def test_all_positive_gives_giant(seed):
    g = SignedCompleteGraph(n=6, plus=np.ones(15, dtype=bool))
    assert acn_cluster(g, seed) == Clustering.giant(6)


@pytest.mark.parametrize("seed", [0, 3])
def test_all_negative_gives_singletons(seed):
    g = SignedCompleteGraph(n=5, plus=np.zeros(10, dtype=bool))
    assert acn_cluster(g, seed) == Clustering.singletons(5)


@pytest.mark.parametrize("t", [2, 3, 5])
def test_matching_structure(t):
    g = gen_matching_instance(t)
    for seed in trial_seeds(11, 10):
        c = acn_cluster(g, seed)
        sizes = sorted(len(cluster) for cluster in c.clusters())
        assert sizes == [1, 2 * t - 1]
        assert worst_vertex_errors(g, c) == 2 * t - 2


def test_acn_is_pure_function_of_seed():
    g = gen_random_complete(9, 0.5, 4)
    assert acn_cluster(g, 123) == acn_cluster(g, 123)


def test_trial_seeds_are_reproducible_and_distinct():
    seeds = trial_seeds(42, 50)
    assert seeds == trial_seeds(42, 50)
    assert len(set(seeds)) == 50


def test_gap_summary():
    summary = acn_minimax_gap(5, 100, 0)
    assert summary.worst_errors == [8] * 100
    assert summary.minimum == summary.maximum == 8
    assert summary.ratio == 8
    assert summary.to_dict()["optimum"] == 1


def test_gap_rejects_small_t():
    with pytest.raises(ParameterError):
        acn_minimax_gap(1, 10, 0)
    with pytest.raises(ParameterError):
        acn_minimax_gap(3, 0, 0)


def test_gap_logs(log_manager):
    acn_minimax_gap(2, 5, 1, log_manager=log_manager)
    log_manager.stop()
    assert "BASELINE" in {entry.category for entry in log_manager.read_entries()}
