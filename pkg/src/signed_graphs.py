"""부호 그래프 생성기와 인스턴스 텍스트 형식

형식 (UTF-8, 줄 단위, '#' 이후는 주석):
    graph complete <n>            또는  graph bipartite <n1> <n2>
    default <+|->
    <+|-> <u> <v>                 (기본 부호의 예외, 쌍마다 최대 한 줄)
"""
from typing import Dict, List, Tuple, Union

import numpy as np

from src.exceptions import InstanceFormatError, ParameterError
from src.models.signed_graph import SignedBipartiteGraph, SignedCompleteGraph, SignedGraph, pair_offset


def _generator(seed: int) -> np.random.Generator:
    """시드로부터 카운터 기반(Philox) 난수 생성기를 만듭니다."""
    return np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))


def _check_probability(p_plus: float):
    if not 0.0 <= p_plus <= 1.0:
        raise ParameterError(f"p_plus는 [0, 1] 범위여야 합니다: {p_plus}")


def gen_matching_instance(t: int) -> SignedCompleteGraph:
    """2t 정점 완전 그래프에서 쌍 {2i, 2i+1}만 -, 나머지는 +

    Args:
        t: 매칭 간선 수 (>= 1)

    Returns:
        SignedCompleteGraph: 매칭 인스턴스
    """
    if t < 1:
        raise ParameterError(f"t는 1 이상이어야 합니다: {t}")
    n = 2 * t
    plus = np.ones(n * (n - 1) // 2, dtype=bool)
    for i in range(t):
        plus[pair_offset(n, 2 * i, 2 * i + 1)] = False
    return SignedCompleteGraph(n=n, plus=plus)


def gen_star_instance(n: int) -> SignedCompleteGraph:
    """n+1 정점 완전 그래프에서 정점 0(중심)에 닿는 간선만 +

    Args:
        n: 중심의 양의 차수 (>= 1)

    Returns:
        SignedCompleteGraph: 별 인스턴스
    """
    if n < 1:
        raise ParameterError(f"n은 1 이상이어야 합니다: {n}")
    total = n + 1
    plus = np.zeros(total * (total - 1) // 2, dtype=bool)
    plus[:n] = True  # 쌍 (0, v)가 사전순 맨 앞
    return SignedCompleteGraph(n=total, plus=plus)


def gen_random_complete(n: int, p_plus: float, seed: int) -> SignedCompleteGraph:
    """각 쌍이 독립적으로 확률 p_plus로 +인 완전 그래프"""
    if n < 1:
        raise ParameterError(f"n은 1 이상이어야 합니다: {n}")
    _check_probability(p_plus)
    rng = _generator(seed)
    plus = rng.random(n * (n - 1) // 2) < p_plus
    return SignedCompleteGraph(n=n, plus=plus)


def gen_random_bipartite(n1: int, n2: int, p_plus: float, seed: int) -> SignedBipartiteGraph:
    """각 교차 쌍이 독립적으로 확률 p_plus로 +인 완전 이분 그래프"""
    if n1 < 1 or n2 < 1:
        raise ParameterError(f"n1, n2는 1 이상이어야 합니다: ({n1}, {n2})")
    _check_probability(p_plus)
    rng = _generator(seed)
    plus = rng.random((n1, n2)) < p_plus
    return SignedBipartiteGraph(n1=n1, n2=n2, plus=plus)


def _parse_sign(token: str, line_number: int) -> bool:
    if token == "+":
        return True
    if token == "-":
        return False
    raise InstanceFormatError(f"부호는 '+' 또는 '-' 이어야 합니다: {token!r}", line_number)


def _parse_int(token: str, line_number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise InstanceFormatError(f"정수가 아닙니다: {token!r}", line_number)
    if value < 0:
        raise InstanceFormatError(f"음수는 허용되지 않습니다: {value}", line_number)
    return value


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((line_number, content.split()))
    return lines


def parse_instance(text: Union[bytes, str]) -> SignedGraph:
    """인스턴스 텍스트를 그래프로 해석합니다.

    Args:
        text: UTF-8 바이트 또는 문자열

    Returns:
        SignedGraph: 모든 쌍의 부호가 정해진 그래프

    Raises:
        InstanceFormatError: 헤더 오류, 범위 초과, 중복 쌍, 자기 루프
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InstanceFormatError(f"UTF-8 해석 실패: {e}")

    lines = _content_lines(text)
    if len(lines) < 2:
        raise InstanceFormatError("헤더와 default 줄이 필요합니다.")

    header_line, header = lines[0]
    if len(header) < 2 or header[0] != "graph":
        raise InstanceFormatError("헤더는 'graph complete <n>' 또는 'graph bipartite <n1> <n2>' 이어야 합니다.", header_line)
    if header[1] == "complete" and len(header) == 3:
        n = _parse_int(header[2], header_line)
        if n < 1:
            raise InstanceFormatError("정점 수는 1 이상이어야 합니다.", header_line)
        bipartite = False
    elif header[1] == "bipartite" and len(header) == 4:
        n1 = _parse_int(header[2], header_line)
        n2 = _parse_int(header[3], header_line)
        if n1 < 1 or n2 < 1:
            raise InstanceFormatError("두 부분 집합 크기는 1 이상이어야 합니다.", header_line)
        bipartite = True
    else:
        raise InstanceFormatError(f"헤더 형식 오류: {' '.join(header)}", header_line)

    default_line, default = lines[1]
    if len(default) != 2 or default[0] != "default":
        raise InstanceFormatError("두 번째 줄은 'default <+|->' 이어야 합니다.", default_line)
    default_plus = _parse_sign(default[1], default_line)

    if bipartite:
        plus = np.full((n1, n2), default_plus, dtype=bool)
    else:
        plus = np.full(n * (n - 1) // 2, default_plus, dtype=bool)

    seen: Dict[Tuple[int, int], int] = {}
    for line_number, tokens in lines[2:]:
        if len(tokens) != 3:
            raise InstanceFormatError(f"예외 줄은 '<+|-> <u> <v>' 이어야 합니다: {' '.join(tokens)}", line_number)
        positive = _parse_sign(tokens[0], line_number)
        u = _parse_int(tokens[1], line_number)
        v = _parse_int(tokens[2], line_number)
        if bipartite:
            if u >= n1 or v >= n2:
                raise InstanceFormatError(f"정점 번호 범위 초과: ({u}, {v})", line_number)
            key = (u, v)
        else:
            if u == v:
                raise InstanceFormatError(f"자기 루프는 허용되지 않습니다: ({u}, {v})", line_number)
            if u >= n or v >= n:
                raise InstanceFormatError(f"정점 번호 범위 초과: ({u}, {v})", line_number)
            key = (min(u, v), max(u, v))
        if key in seen:
            raise InstanceFormatError(f"중복된 쌍: {key} (line {seen[key]}에서 이미 지정)", line_number)
        seen[key] = line_number
        if bipartite:
            plus[key] = positive
        else:
            plus[pair_offset(n, *key)] = positive

    if bipartite:
        return SignedBipartiteGraph(n1=n1, n2=n2, plus=plus)
    return SignedCompleteGraph(n=n, plus=plus)


def serialize_instance(g: SignedGraph) -> bytes:
    """그래프를 표준형 텍스트로 직렬화합니다.

    기본 부호는 다수 부호(동수면 +), 예외 줄은 (u, v) 사전순입니다.
    """
    if isinstance(g, SignedBipartiteGraph):
        header = f"graph bipartite {g.n1} {g.n2}"
        flat = g.plus.ravel()
        local_pairs = ((i, j) for i in range(g.n1) for j in range(g.n2))
    else:
        header = f"graph complete {g.n}"
        flat = g.plus
        local_pairs = g.pairs()

    positives = int(flat.sum())
    default_plus = positives * 2 >= flat.size
    lines = [header, f"default {'+' if default_plus else '-'}"]
    minority = "-" if default_plus else "+"
    for (u, v), positive in zip(local_pairs, flat.tolist()):
        if positive != default_plus:
            lines.append(f"{minority} {u} {v}")
    return ("\n".join(lines) + "\n").encode("utf-8")
