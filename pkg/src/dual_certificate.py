"""최소최대 LP의 쌍대 인증서 구성과 검증

쌍대 문제: max Σ_v d⁻(v) π_v
    s.t. Σ_v π_v ≤ 1, π ≥ 0,
         + 간선 uv: −π_u − π_v + σ̂_uv ≤ 0,
         − 간선 uv:  π_u + π_v + σ̂_uv ≤ 0.
삼각 변수 σ_(a,b,c) (제약 x_ab ≤ x_ac + x_bc)는 σ̂_ab에 −σ, σ̂_ac와 σ̂_bc에 +σ로 집계됩니다.
"""
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

import config
from src.exceptions import DimensionMismatchError, ParameterError
from src.models.linear_program import DualCertificate, DualVerdict
from src.models.signed_graph import SignedGraph
from src.utils.log_manager import LogCategory, LogManager

Triple = Tuple[int, int, int]


def aggregate_sigma(n: int, triples: Mapping[Triple, float]) -> np.ndarray:
    """삼각 변수 σ_(a,b,c)를 σ̂ 대칭 행렬로 집계합니다."""
    sigma_hat = np.zeros((n, n))
    for (a, b, c), sigma in triples.items():
        if len({a, b, c}) != 3:
            raise ParameterError(f"삼각 변수의 세 정점은 서로 달라야 합니다: {(a, b, c)}")
        for (u, v), delta in (((a, b), -sigma), ((a, c), sigma), ((b, c), sigma)):
            sigma_hat[u, v] += delta
            sigma_hat[v, u] += delta
    return sigma_hat


def matching_dual_certificate(t: int) -> DualCertificate:
    """M_t 인스턴스의 최적성 인증서 (목적 값 1)

    매칭 간선 {0, 1}의 두 끝점에 π = 1/2, 나머지 모든 z에 σ_(0,1,z) = 1/(2t−2).
    """
    if t < 2:
        raise ParameterError(f"t는 2 이상이어야 합니다: {t}")
    n = 2 * t
    pi = np.zeros(n)
    pi[0] = pi[1] = 0.5
    sigma = 1.0 / (2 * t - 2)
    triples = {(0, 1, z): sigma for z in range(2, n)}
    return DualCertificate(pi=pi, sigma_hat=aggregate_sigma(n, triples), claimed_objective=1.0)


def star_dual_certificate(n: int) -> DualCertificate:
    """G_n 인스턴스의 최적성 인증서 (목적 값 n/3)

    π_{u*} = 1 − n/(3(n−1)), π_v = 1/(3(n−1)), 모든 순서쌍 (v, w)에 σ_(v,w,u*) = 1/(3(n−1)).
    """
    if n < 2:
        raise ParameterError(f"n은 2 이상이어야 합니다: {n}")
    share = 1.0 / (3 * (n - 1))
    pi = np.full(n + 1, share)
    pi[0] = 1.0 - n * share
    triples = {(v, w, 0): share for v in range(1, n + 1) for w in range(1, n + 1) if v != w}
    # 순서쌍 (v, w)와 (w, v)는 같은 제약이므로 값을 합칩니다.
    merged: Dict[Triple, float] = {}
    for (v, w, z), sigma in triples.items():
        key = (min(v, w), max(v, w), z)
        merged[key] = merged.get(key, 0.0) + sigma
    return DualCertificate(pi=pi, sigma_hat=aggregate_sigma(n + 1, merged), claimed_objective=n / 3.0)


def verify_dual_certificate(
    g: SignedGraph,
    cert: DualCertificate,
    tolerance: float = config.LP_TOLERANCE,
    log_manager: Optional[LogManager] = None
) -> DualVerdict:
    """쌍대 실행 가능성을 검사하고 목적 값을 계산합니다.

    Args:
        g: 부호 그래프
        cert: 쌍대 인증서
        tolerance: 허용 오차
        log_manager: 로그 매니저

    Returns:
        DualVerdict: 실행 가능 여부, 목적 값 Σ d⁻(v)π_v, 여유가 있는 + 간선 목록
    """
    n = g.vertex_count
    if cert.vertex_count != n:
        raise DimensionMismatchError(f"인증서 정점 수({cert.vertex_count})가 그래프 정점 수({n})와 다릅니다.")

    violations = []
    pi = cert.pi
    for v in np.flatnonzero(pi < -tolerance).tolist():
        violations.append(f"pi_{v} = {pi[v]:.9g} < 0")
    pi_sum = float(pi.sum())
    if pi_sum > 1.0 + tolerance:
        violations.append(f"sum(pi) = {pi_sum:.9g} > 1")

    signs = g.sign_matrix()
    pair_sum = pi[:, None] + pi[None, :]
    lhs = np.where(signs > 0, -pair_sum, pair_sum) + cert.sigma_hat
    iu = np.triu_indices(n, k=1)
    edge = signs[iu] != 0
    for u, v in zip(iu[0][edge].tolist(), iu[1][edge].tolist()):
        if lhs[u, v] > tolerance:
            violations.append(f"edge ({u}, {v}) {g.sign(u, v)}: {lhs[u, v]:.9g} > 0")
    positive = signs[iu] > 0
    slack_pairs = [
        (u, v) for u, v in zip(iu[0][positive].tolist(), iu[1][positive].tolist())
        if lhs[u, v] < -tolerance
    ]

    objective = float(g.negative_degrees() @ pi)
    verdict = DualVerdict(
        feasible=not violations,
        objective=objective,
        pi_sum=pi_sum,
        violations=violations,
        slack_pairs=slack_pairs,
    )
    if log_manager:
        log_manager.log(
            category=LogCategory.LP,
            message="쌍대 인증서 검증 완료",
            data={"feasible": verdict.feasible, "objective": objective, "violations": len(violations)}
        )
    return verdict
