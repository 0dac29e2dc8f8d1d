"""라운딩 파라미터 기본값과 근사 비율 상수"""
from typing import Dict

from src.models.rounding import RoundingParams

# 완전 그래프 기본값 (비율 약 47.6)
COMPLETE_DEFAULTS = RoundingParams(alpha=0.465744, gamma=0.0887449, k1=0.767566, k2=0.117219, k3=0.308433)
# 이분 그래프 기본값 (비율 10 이하)
BIPARTITE_DEFAULTS = RoundingParams(alpha=0.377, gamma=0.102, k1=0.730)


def default_params_complete() -> RoundingParams:
    return COMPLETE_DEFAULTS


def default_params_bipartite() -> RoundingParams:
    return BIPARTITE_DEFAULTS


def default_params(setting: str) -> RoundingParams:
    return COMPLETE_DEFAULTS if setting == "complete" else BIPARTITE_DEFAULTS


def ratio_components_complete(p: RoundingParams) -> Dict[str, float]:
    """완전 그래프 비율 상수의 구성 요소

    Returns:
        Dict[str, float]: bank(공통 항), c1, c2, c3, ratio
    """
    p.validate("complete")
    alpha, gamma, k1, k2, k3 = p.alpha, p.gamma, p.k1, p.k2, p.k3
    bank = 1.0 / ((1 - 2 * k3) * (k3 - k2) * alpha)
    c1 = bank + 1.0 / (1 - 2 * alpha) + 1.0 / (k1 * alpha - gamma)
    c2 = bank + max(1.0 / ((1 - k1) * alpha), 1.0 / gamma)
    c3 = bank + 1.0 / (k2 * alpha)
    return {"bank": bank, "c1": c1, "c2": c2, "c3": c3, "ratio": max(c1, c2, c3)}


def ratio_components_bipartite(p: RoundingParams) -> Dict[str, float]:
    """이분 그래프 비율 상수의 구성 요소 (c1, c2, c3, ratio)"""
    p.validate("bipartite")
    alpha, gamma, k1 = p.alpha, p.gamma, p.k1
    c1 = 1.0 / (1 - 2 * alpha) + 1.0 / (k1 * alpha - gamma)
    c2 = max(1.0 / ((1 - k1) * alpha), 1.0 / gamma, 2.0 / alpha)
    c3 = max(1.0 / (1 - 2 * alpha), 2.0 / alpha)
    return {"c1": c1, "c2": c2, "c3": c3, "ratio": max(c1, c2, c3)}


def ratio_constant_complete(p: RoundingParams) -> float:
    return ratio_components_complete(p)["ratio"]


def ratio_constant_bipartite(p: RoundingParams) -> float:
    return ratio_components_bipartite(p)["ratio"]


def ratio_constant(setting: str, p: RoundingParams) -> float:
    if setting == "complete":
        return ratio_constant_complete(p)
    return ratio_constant_bipartite(p)


def cross_edge_bound(p: RoundingParams) -> float:
    """Type 2 클러스터 교차 간선의 cluster-cost / LP-cost 상한 max{1/(1−2α), 2/α}"""
    return max(1.0 / (1 - 2 * p.alpha), 2.0 / p.alpha)
