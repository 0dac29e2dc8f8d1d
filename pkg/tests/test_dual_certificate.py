import numpy as np
import pytest

from src.dual_certificate import (
    aggregate_sigma,
    matching_dual_certificate,
    star_dual_certificate,
    verify_dual_certificate,
)
from src.exceptions import DimensionMismatchError, ParameterError
from src.lp_builder import build_minimax_lp
from src.models.linear_program import DualCertificate
from src.signed_graphs import gen_matching_instance, gen_random_complete, gen_star_instance
from src.simplex_solver import solve


def test_aggregate_sigma_signs():
    sigma_hat = aggregate_sigma(3, {(0, 1, 2): 0.25})
    assert sigma_hat[0, 1] == sigma_hat[1, 0] == -0.25
    assert sigma_hat[0, 2] == 0.25
    assert sigma_hat[1, 2] == 0.25


def test_matching_certificate_aggregates():
    cert = matching_dual_certificate(3)
    assert cert.pi.tolist() == [0.5, 0.5, 0, 0, 0, 0]
    assert cert.sigma_hat[0, 1] == pytest.approx(-1.0)
    assert cert.sigma_hat[0, 4] == pytest.approx(0.25)
    assert cert.sigma_hat[1, 5] == pytest.approx(0.25)
    assert cert.sigma_hat[2, 3] == 0.0


@pytest.mark.parametrize("t", [2, 3, 4, 5, 6])
def test_matching_certificate_verifies(t):
    verdict = verify_dual_certificate(gen_matching_instance(t), matching_dual_certificate(t))
    assert verdict.feasible, verdict.violations
    assert verdict.objective == pytest.approx(1.0)


def test_matching_certificate_slack_edges():
    verdict = verify_dual_certificate(gen_matching_instance(3), matching_dual_certificate(3))
    assert (0, 2) in verdict.slack_pairs
    assert (1, 5) in verdict.slack_pairs
    assert (2, 4) not in verdict.slack_pairs


@pytest.mark.parametrize("t", [0, 1])
def test_matching_certificate_rejects_small_t(t):
    with pytest.raises(ParameterError):
        matching_dual_certificate(t)


def test_star_certificate_n2_values():
    cert = star_dual_certificate(2)
    assert cert.pi.tolist() == pytest.approx([1 / 3, 1 / 3, 1 / 3])


@pytest.mark.parametrize("n", range(2, 9))
def test_star_certificate_verifies(n):
    cert = star_dual_certificate(n)
    assert (cert.pi >= 0).all()
    assert cert.pi.sum() == pytest.approx(1.0)
    verdict = verify_dual_certificate(gen_star_instance(n), cert)
    assert verdict.feasible, verdict.violations
    assert verdict.objective == pytest.approx(n / 3)
    assert verdict.objective == pytest.approx(cert.claimed_objective)


def test_star_certificate_sigma_hat():
    cert = star_dual_certificate(7)
    assert cert.sigma_hat[0, 3] == pytest.approx(2 / 3)
    assert cert.sigma_hat[2, 5] == pytest.approx(-2 / 18)


def test_pi_sum_above_one_is_infeasible():
    cert = matching_dual_certificate(3)
    inflated = DualCertificate(pi=cert.pi * 1.5, sigma_hat=cert.sigma_hat, claimed_objective=1.5)
    verdict = verify_dual_certificate(gen_matching_instance(3), inflated)
    assert not verdict.feasible
    assert any("sum(pi)" in v for v in verdict.violations)


def test_negative_pi_is_infeasible():
    n = 4
    pi = np.array([-0.1, 0.0, 0.0, 0.0])
    verdict = verify_dual_certificate(gen_matching_instance(2), DualCertificate(pi, np.zeros((n, n)), 0.0))
    assert not verdict.feasible


def test_certificate_size_mismatch():
    with pytest.raises(DimensionMismatchError):
        verify_dual_certificate(gen_star_instance(3), star_dual_certificate(4))


@pytest.mark.parametrize("t", [2, 3, 4])
def test_certificate_objective_matches_primal(t):
    primal = solve(build_minimax_lp(gen_matching_instance(t)), backend="simplex")
    verdict = verify_dual_certificate(gen_matching_instance(t), matching_dual_certificate(t))
    assert primal.objective == pytest.approx(verdict.objective, abs=1e-7)


@pytest.mark.parametrize("seed", range(3))
def test_weak_duality_on_random_feasible_points(seed):
    g = gen_star_instance(5)
    verdict = verify_dual_certificate(g, star_dual_certificate(5))
    lp = build_minimax_lp(g)
    rng = np.random.default_rng(seed)
    # 가능한 원 문제 해: 임의의 클러스터링 거리와 그에 맞는 M
    labels = rng.integers(0, 3, size=6)
    x = (labels[:, None] != labels[None, :]).astype(float)
    values = np.zeros(lp.column_count)
    for (u, v), column in lp.pair_columns.items():
        values[column] = x[u, v]
    signs = g.sign_matrix()
    errors = np.where(signs > 0, x, 0).sum(1) + np.where(signs < 0, 1 - x, 0).sum(1)
    values[-1] = errors.max()
    assert lp.max_violation(values) <= 1e-9
    assert verdict.objective <= lp.objective_value(values) + 1e-7


def test_matching_certificate_fails_on_all_negative_graph():
    g = gen_random_complete(6, 0.0, 1)
    verdict = verify_dual_certificate(g, matching_dual_certificate(3))
    assert not verdict.feasible
