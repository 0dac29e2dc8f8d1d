from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.exceptions import ParameterError

ObjectiveKind = Literal["l1-mean", "lp", "linf"]
ViolationKind = Literal["box", "triangle"]


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Clustering:
    """정점 분할 (표준형: 가장 작은 원소 순으로 클러스터 번호 부여)"""
    labels: np.ndarray           # 정점 -> 클러스터 번호 (0..k-1)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("클러스터 라벨은 1차원이어야 합니다.")
        canonical = np.empty_like(labels)
        remap: Dict[int, int] = {}
        for v, label in enumerate(labels.tolist()):
            if label not in remap:
                remap[label] = len(remap)
            canonical[v] = remap[label]
        object.__setattr__(self, "labels", _readonly(canonical))

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[int]], n: int) -> 'Clustering':
        """클러스터 목록으로부터 생성합니다. 모든 정점이 정확히 한 번 나타나야 합니다."""
        labels = np.full(n, -1, dtype=np.int64)
        for cluster_id, members in enumerate(clusters):
            members = list(members)
            if not members:
                raise ValueError("빈 클러스터는 허용되지 않습니다.")
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"정점 번호 범위 초과: {v}")
                if labels[v] != -1:
                    raise ValueError(f"정점 {v}이(가) 두 클러스터에 속합니다.")
                labels[v] = cluster_id
        if (labels < 0).any():
            raise ValueError(f"클러스터에 속하지 않은 정점: {np.flatnonzero(labels < 0).tolist()}")
        return cls(labels)

    @classmethod
    def giant(cls, n: int) -> 'Clustering':
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def singletons(cls, n: int) -> 'Clustering':
        return cls(np.arange(n, dtype=np.int64))

    @property
    def vertex_count(self) -> int:
        return int(self.labels.shape[0])

    @property
    def cluster_count(self) -> int:
        return int(self.labels.max()) + 1 if self.vertex_count else 0

    def clusters(self) -> List[List[int]]:
        """클러스터 목록 (각 클러스터는 정렬된 정점 목록)"""
        result: List[List[int]] = [[] for _ in range(self.cluster_count)]
        for v, label in enumerate(self.labels.tolist()):
            result[label].append(v)
        return result

    def same_cluster_matrix(self) -> np.ndarray:
        return self.labels[:, None] == self.labels[None, :]

    def to_dict(self) -> Dict:
        return {"clusters": self.clusters()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return bool(np.array_equal(self.labels, other.labels))

    def __hash__(self) -> int:
        return hash(self.labels.tobytes())

    def __repr__(self) -> str:
        return f"Clustering({self.clusters()})"


@dataclass(frozen=True, eq=False)
class FractionalClustering:
    """분수 클러스터링: 대칭 거리 행렬 (대각선 0)

    이분 그래프의 경우 같은 쪽 쌍의 거리(보조 변수)도 포함합니다.
    """
    distances: np.ndarray        # (n, n) 대칭, 값은 [0, 1]

    def __post_init__(self):
        matrix = np.array(self.distances, dtype=np.float64, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"거리 행렬은 정사각이어야 합니다: {matrix.shape}")
        if not np.allclose(matrix, matrix.T, atol=1e-12, rtol=0.0):
            raise ValueError("거리 행렬이 대칭이 아닙니다.")
        np.fill_diagonal(matrix, 0.0)
        object.__setattr__(self, "distances", _readonly(matrix))

    @classmethod
    def constant(cls, n: int, value: float) -> 'FractionalClustering':
        return cls(np.full((n, n), float(value)))

    @classmethod
    def from_pairs(cls, n: int, values: Mapping[Tuple[int, int], float], default: float = 1.0) -> 'FractionalClustering':
        """쌍 -> 거리 사전으로부터 생성합니다. 지정하지 않은 쌍은 default."""
        matrix = np.full((n, n), float(default))
        for (u, v), value in values.items():
            matrix[u, v] = matrix[v, u] = float(value)
        return cls(matrix)

    @property
    def vertex_count(self) -> int:
        return int(self.distances.shape[0])

    def distance(self, u: int, v: int) -> float:
        return float(self.distances[u, v])


@dataclass(frozen=True, eq=False)
class ErrorVector:
    """정점별 오류 가중치 (단위: 기대 오류 간선 수)"""
    errors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "errors", _readonly(np.array(self.errors, dtype=np.float64, copy=True)))

    def __len__(self) -> int:
        return int(self.errors.shape[0])

    def __getitem__(self, v: int) -> float:
        return float(self.errors[v])

    def scaled(self, factor: float) -> 'ErrorVector':
        return ErrorVector(self.errors * factor)

    def restricted(self, vertices: Sequence[int]) -> 'ErrorVector':
        return ErrorVector(self.errors[np.asarray(vertices, dtype=np.int64)])

    def integral(self) -> np.ndarray:
        """이산 클러스터링의 오류 벡터를 정수로 변환합니다."""
        return np.rint(self.errors).astype(np.int64)

    def tolist(self) -> List[float]:
        return self.errors.tolist()


@dataclass(frozen=True)
class Objective:
    """오류 벡터에 적용하는 목적 함수 f"""
    kind: ObjectiveKind
    p: Optional[float] = None

    def __post_init__(self):
        if self.kind == "lp":
            if self.p is None or not np.isfinite(self.p) or self.p < 1:
                raise ParameterError(f"lp 목적 함수는 p >= 1 이어야 합니다: p={self.p}")
        elif self.kind in ("l1-mean", "linf"):
            if self.p is not None:
                raise ParameterError(f"{self.kind} 목적 함수에는 p를 지정할 수 없습니다.")
        else:
            raise ParameterError(f"알 수 없는 목적 함수: {self.kind}")

    @classmethod
    def l1_mean(cls) -> 'Objective':
        return cls("l1-mean")

    @classmethod
    def linf(cls) -> 'Objective':
        return cls("linf")

    @classmethod
    def lp(cls, p: float) -> 'Objective':
        return cls("lp", float(p))

    @classmethod
    def parse(cls, text: str) -> 'Objective':
        """CLI 표기 (linf, l1, lp:<p>)를 해석합니다."""
        text = text.strip().lower()
        if text in ("linf", "l-inf", "minimax"):
            return cls.linf()
        if text in ("l1", "l1-mean"):
            return cls.l1_mean()
        if text.startswith("lp:"):
            try:
                p = float(text[3:])
            except ValueError:
                raise ParameterError(f"lp 지수 해석 실패: {text}")
            return cls.lp(p)
        raise ParameterError(f"알 수 없는 목적 함수 표기: {text}")

    @property
    def label(self) -> str:
        if self.kind == "linf":
            return "linf"
        if self.kind == "l1-mean":
            return "l1"
        return f"lp:{self.p:g}"


@dataclass(frozen=True)
class Violation:
    """분수 클러스터링 제약 위반"""
    kind: ViolationKind
    vertices: Tuple[int, ...]    # box: (u, v) / triangle: (v, w, z) 는 x_vz > x_vw + x_wz
    slack: float                 # 위반량 (양수)

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "slack": self.slack}
