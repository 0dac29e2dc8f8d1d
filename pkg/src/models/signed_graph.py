from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Literal, Tuple, Union

import numpy as np

SignType = Literal["+", "-"]
GraphKind = Literal["complete", "bipartite"]


def pair_offset(n: int, u: int, v: int) -> int:
    """상삼각 평탄 배열에서 쌍 {u, v} (u < v)의 위치"""
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=bool, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SignedCompleteGraph:
    """부호 간선 완전 그래프

    부호는 상삼각 평탄 bool 배열(True = +)로 저장합니다.
    """
    n: int                       # 정점 수
    plus: np.ndarray             # 길이 C(n,2), 쌍 (u<v) 사전순
    kind: GraphKind = field(default="complete", init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("정점 수는 1 이상이어야 합니다.")
        expected = self.n * (self.n - 1) // 2
        if np.shape(self.plus) != (expected,):
            raise ValueError(f"부호 배열 길이 불일치: {np.shape(self.plus)} != ({expected},)")
        object.__setattr__(self, "plus", _freeze(self.plus))

    @classmethod
    def from_sign_matrix(cls, signs: np.ndarray) -> 'SignedCompleteGraph':
        """±1 대칭 행렬로부터 그래프를 생성합니다."""
        signs = np.asarray(signs)
        n = signs.shape[0]
        iu = np.triu_indices(n, k=1)
        return cls(n=n, plus=signs[iu] > 0)

    @property
    def vertex_count(self) -> int:
        return self.n

    def pairs(self) -> Iterator[Tuple[int, int]]:
        """모든 비순서쌍 (u < v)을 사전순으로 순회합니다."""
        for u in range(self.n):
            for v in range(u + 1, self.n):
                yield u, v

    def has_pair(self, u: int, v: int) -> bool:
        return u != v and 0 <= u < self.n and 0 <= v < self.n

    def is_positive(self, u: int, v: int) -> bool:
        if not self.has_pair(u, v):
            raise KeyError(f"존재하지 않는 쌍: ({u}, {v})")
        if u > v:
            u, v = v, u
        return bool(self.plus[pair_offset(self.n, u, v)])

    def sign(self, u: int, v: int) -> SignType:
        return "+" if self.is_positive(u, v) else "-"

    def sign_matrix(self) -> np.ndarray:
        """±1 대칭 행렬 (대각선 0)"""
        matrix = np.zeros((self.n, self.n), dtype=np.int8)
        iu = np.triu_indices(self.n, k=1)
        matrix[iu] = np.where(self.plus, 1, -1)
        return matrix + matrix.T

    def edge_mask(self) -> np.ndarray:
        """간선이 존재하는 쌍의 bool 행렬"""
        return ~np.eye(self.n, dtype=bool)

    def guaranteed_vertices(self) -> np.ndarray:
        """정점별 보장이 적용되는 정점 집합 (완전 그래프는 전체)"""
        return np.arange(self.n)

    def positive_degrees(self) -> np.ndarray:
        return (self.sign_matrix() > 0).sum(axis=1)

    def negative_degrees(self) -> np.ndarray:
        return (self.sign_matrix() < 0).sum(axis=1)

    def positive_edges(self) -> List[Tuple[int, int]]:
        return [pair for pair, positive in zip(self.pairs(), self.plus) if positive]

    def negative_edges(self) -> List[Tuple[int, int]]:
        return [pair for pair, positive in zip(self.pairs(), self.plus) if not positive]

    def describe(self) -> Dict:
        return {"kind": self.kind, "n": self.n}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedCompleteGraph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.plus, other.plus))

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.plus.tobytes()))


@dataclass(frozen=True, eq=False)
class SignedBipartiteGraph:
    """부호 간선 완전 이분 그래프

    전역 정점 번호: V1 = 0..n1-1, V2 = n1..n1+n2-1.
    부호는 n1 x n2 bool 행렬(True = +)로 저장합니다.
    """
    n1: int                      # V1 크기
    n2: int                      # V2 크기
    plus: np.ndarray             # (n1, n2)
    kind: GraphKind = field(default="bipartite", init=False)

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("이분 그래프의 두 부분 집합은 비어 있을 수 없습니다.")
        if np.shape(self.plus) != (self.n1, self.n2):
            raise ValueError(f"부호 행렬 크기 불일치: {np.shape(self.plus)} != ({self.n1}, {self.n2})")
        object.__setattr__(self, "plus", _freeze(self.plus))

    @property
    def vertex_count(self) -> int:
        return self.n1 + self.n2

    def side_of(self, v: int) -> int:
        return 1 if v < self.n1 else 2

    def pairs(self) -> Iterator[Tuple[int, int]]:
        """모든 교차 쌍 (i in V1, j in V2)을 전역 번호로 순회합니다."""
        for i in range(self.n1):
            for j in range(self.n2):
                yield i, self.n1 + j

    def has_pair(self, u: int, v: int) -> bool:
        total = self.vertex_count
        if not (0 <= u < total and 0 <= v < total):
            return False
        return self.side_of(u) != self.side_of(v)

    def is_positive(self, u: int, v: int) -> bool:
        if not self.has_pair(u, v):
            raise KeyError(f"존재하지 않는 쌍: ({u}, {v})")
        if u > v:
            u, v = v, u
        return bool(self.plus[u, v - self.n1])

    def sign(self, u: int, v: int) -> SignType:
        return "+" if self.is_positive(u, v) else "-"

    def sign_matrix(self) -> np.ndarray:
        """±1 대칭 행렬 (같은 쪽 쌍과 대각선은 0)"""
        total = self.vertex_count
        matrix = np.zeros((total, total), dtype=np.int8)
        block = np.where(self.plus, 1, -1).astype(np.int8)
        matrix[:self.n1, self.n1:] = block
        matrix[self.n1:, :self.n1] = block.T
        return matrix

    def edge_mask(self) -> np.ndarray:
        return self.sign_matrix() != 0

    def guaranteed_vertices(self) -> np.ndarray:
        """정점별 보장이 적용되는 정점 집합 (V1)"""
        return np.arange(self.n1)

    def positive_degrees(self) -> np.ndarray:
        return (self.sign_matrix() > 0).sum(axis=1)

    def negative_degrees(self) -> np.ndarray:
        return (self.sign_matrix() < 0).sum(axis=1)

    def describe(self) -> Dict:
        return {"kind": self.kind, "n1": self.n1, "n2": self.n2}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedBipartiteGraph):
            return NotImplemented
        return (self.n1, self.n2) == (other.n1, other.n2) and bool(np.array_equal(self.plus, other.plus))

    def __hash__(self) -> int:
        return hash((self.kind, self.n1, self.n2, self.plus.tobytes()))


SignedGraph = Union[SignedCompleteGraph, SignedBipartiteGraph]
