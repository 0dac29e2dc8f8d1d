"""분수 클러스터링 완화 문제를 명시적인 LP로 구성합니다.

변수 순서는 쌍 (u < v) 사전순, 그 다음 M(최소최대 LP만)입니다.
이분 그래프는 같은 쪽 쌍을 보조 거리 변수로 포함하여 삼각 부등식을 완성합니다.
"""
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np

from src.exceptions import DimensionMismatchError, ParameterError
from src.models.clustering import FractionalClustering
from src.models.linear_program import LinearProgram, LpSolution, RowKind
from src.models.signed_graph import SignedGraph


def _pair_columns(n: int) -> Tuple[Dict[Tuple[int, int], int], np.ndarray, List[str]]:
    columns: Dict[Tuple[int, int], int] = {}
    index = np.full((n, n), -1, dtype=np.int64)
    names: List[str] = []
    for u in range(n):
        for v in range(u + 1, n):
            index[u, v] = index[v, u] = len(names)
            columns[(u, v)] = len(names)
            names.append(f"x_{u}_{v}")
    return columns, index, names


def _triangle_rows(n: int, index: np.ndarray, width: int) -> np.ndarray:
    """모든 삼중쌍 a < b < c에 대해 세 개의 삼각 부등식 행 (우변 0)"""
    if n < 3:
        return np.zeros((0, width))
    triples = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    ab = index[triples[:, 0], triples[:, 1]]
    ac = index[triples[:, 0], triples[:, 2]]
    bc = index[triples[:, 1], triples[:, 2]]
    count = triples.shape[0]
    rows = np.zeros((3 * count, width))
    base = np.arange(count) * 3
    # 각 변이 나머지 두 변의 합 이하
    for offset, (longest, first, second) in enumerate(((ac, ab, bc), (ab, ac, bc), (bc, ab, ac))):
        rows[base + offset, longest] = 1.0
        rows[base + offset, first] = -1.0
        rows[base + offset, second] = -1.0
    return rows


def _check_graph(g: SignedGraph):
    if g.vertex_count < 2:
        raise ParameterError(f"LP 구성에는 정점이 2개 이상 필요합니다: n={g.vertex_count}")


def build_minimax_lp(g: SignedGraph) -> LinearProgram:
    """최소최대(linf) 완화 LP

    min M  s.t.  삼각 부등식,  Σ_{N⁺(v)} x_vw − Σ_{N⁻(v)} x_vw − M ≤ −d⁻(v),
    0 ≤ x ≤ 1,  M ≥ 0.  이분 그래프는 V1 정점만 오류 행을 가집니다.

    Args:
        g: 부호 그래프 (정점 2개 이상)

    Returns:
        LinearProgram: 최소최대 LP
    """
    _check_graph(g)
    n = g.vertex_count
    columns, index, names = _pair_columns(n)
    pair_count = len(names)
    width = pair_count + 1
    m_column = pair_count

    triangle = _triangle_rows(n, index, width)

    signs = g.sign_matrix()
    guaranteed = g.guaranteed_vertices()
    error = np.zeros((guaranteed.shape[0], width))
    rhs = np.zeros(guaranteed.shape[0])
    for row, v in enumerate(guaranteed.tolist()):
        for w in range(n):
            if signs[v, w] > 0:
                error[row, index[v, w]] = 1.0
            elif signs[v, w] < 0:
                error[row, index[v, w]] = -1.0
        error[row, m_column] = -1.0
        rhs[row] = -float((signs[v] < 0).sum())

    c = np.zeros(width)
    c[m_column] = 1.0
    lower = np.zeros(width)
    upper = np.ones(width)
    upper[m_column] = np.inf
    row_kinds: List[RowKind] = ["triangle"] * triangle.shape[0] + ["error"] * error.shape[0]
    return LinearProgram(
        c=c,
        A=np.vstack([triangle, error]),
        b=np.concatenate([np.zeros(triangle.shape[0]), rhs]),
        lower=lower,
        upper=upper,
        names=names + ["M"],
        pair_columns=columns,
        vertex_count=n,
        row_kinds=row_kinds,
    )


def build_l1_lp(g: SignedGraph) -> LinearProgram:
    """고전적인 l1 완화 LP: min Σ₊ x_e + Σ₋ (1 − x_e) over 삼각 부등식 다면체

    이분 그래프의 같은 쪽 보조 변수는 목적 계수 0입니다.
    """
    _check_graph(g)
    n = g.vertex_count
    columns, index, names = _pair_columns(n)
    width = len(names)
    triangle = _triangle_rows(n, index, width)

    signs = g.sign_matrix()
    c = np.zeros(width)
    negatives = 0
    for (u, v), column in columns.items():
        if signs[u, v] > 0:
            c[column] = 1.0
        elif signs[u, v] < 0:
            c[column] = -1.0
            negatives += 1

    return LinearProgram(
        c=c,
        A=triangle,
        b=np.zeros(triangle.shape[0]),
        lower=np.zeros(width),
        upper=np.ones(width),
        names=names,
        pair_columns=columns,
        vertex_count=n,
        objective_constant=float(negatives),
        row_kinds=["triangle"] * triangle.shape[0],
    )


def fractional_from_solution(lp: LinearProgram, solution: LpSolution) -> FractionalClustering:
    """쌍 변수 값을 [0, 1]로 잘라 거리 행렬로 읽어옵니다."""
    if not solution.is_optimal or solution.values is None:
        raise ValueError(f"최적해가 없는 풀이 결과입니다: status={solution.status}")
    if solution.values.shape != (lp.column_count,):
        raise DimensionMismatchError(f"해의 길이({solution.values.shape})가 LP 열 수({lp.column_count})와 다릅니다.")
    n = lp.vertex_count
    matrix = np.ones((n, n))
    for (u, v), column in lp.pair_columns.items():
        matrix[u, v] = matrix[v, u] = min(max(float(solution.values[column]), 0.0), 1.0)
    return FractionalClustering(matrix)


def _number(value: float) -> str:
    return f"{value + 0.0:g}"


def _terms(coefficients: np.ndarray, names: List[str]) -> str:
    terms = [f"{coefficients[j]:+g} {names[j]}" for j in np.flatnonzero(coefficients).tolist()]
    return " ".join(terms) if terms else "0"


def dump_lp(lp: LinearProgram) -> str:
    """골든 테스트용 LP 텍스트 덤프

    형식:
        min <terms> [<constant>]
        <terms> <= <rhs>          (행마다 한 줄)
        bounds
        <lo> <= <name> <= <hi>    (변수마다 한 줄)
    """
    objective = f"min {_terms(lp.c, lp.names)}"
    if lp.objective_constant:
        objective += f" {lp.objective_constant:+g}"
    lines = [objective]
    for row, rhs in zip(lp.A, lp.b):
        lines.append(f"{_terms(row, lp.names)} <= {_number(rhs)}")
    lines.append("bounds")
    for name, lo, hi in zip(lp.names, lp.lower, lp.upper):
        lines.append(f"{_number(lo)} <= {name} <= {_number(hi)}")
    return "\n".join(lines) + "\n"
