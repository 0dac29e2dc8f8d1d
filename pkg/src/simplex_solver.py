"""조밀 2단계 원시 심플렉스 (Bland 규칙) 및 HiGHS 백엔드"""
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linprog

import config
from src.exceptions import CorrelationClusteringError, IterationLimitError, ParameterError
from src.models.linear_program import LinearProgram, LpSolution
from src.utils.log_manager import LogCategory, LogManager


def _standard_form(lp: LinearProgram) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, np.ndarray, np.ndarray]:
    """x = offset + T x' (x' >= 0) 치환 후 유한 상한을 행으로 옮깁니다.

    Returns:
        (A', b', c', 상수항, T, offset)
    """
    n = lp.column_count
    columns: List[Tuple[int, float]] = []
    offset = np.zeros(n)
    upper_rows: List[Tuple[int, float]] = []
    for j in range(n):
        lo, hi = lp.lower[j], lp.upper[j]
        if np.isfinite(lo):
            offset[j] = lo
            columns.append((j, 1.0))
            if np.isfinite(hi):
                upper_rows.append((len(columns) - 1, hi - lo))
        elif np.isfinite(hi):
            offset[j] = hi
            columns.append((j, -1.0))
        else:
            columns.append((j, 1.0))
            columns.append((j, -1.0))

    transform = np.zeros((n, len(columns)))
    for k, (j, sign) in enumerate(columns):
        transform[j, k] = sign

    bound_rows = np.zeros((len(upper_rows), len(columns)))
    bound_rhs = np.zeros(len(upper_rows))
    for r, (k, bound) in enumerate(upper_rows):
        bound_rows[r, k] = 1.0
        bound_rhs[r] = bound

    A = np.vstack([lp.A @ transform, bound_rows])
    b = np.concatenate([lp.b - lp.A @ offset, bound_rhs])
    c = lp.c @ transform
    constant = float(lp.c @ offset) + lp.objective_constant
    return A, b, c, constant, transform, offset


class SimplexSolver:
    """조밀 테이블로 구현한 2단계 원시 심플렉스

    진입 변수는 축소 비용이 음수인 가장 작은 번호, 이탈 변수는 최소 비율 행 중
    기저 변수 번호가 가장 작은 행입니다 (Bland 규칙).
    """

    def __init__(
        self,
        tolerance: float = config.LP_TOLERANCE,
        pivot_tolerance: float = config.PIVOT_TOLERANCE,
        zero_tolerance: float = config.ZERO_TOLERANCE,
        iteration_factor: int = config.SIMPLEX_ITERATION_FACTOR,
        log_manager: Optional[LogManager] = None
    ):
        """
        Args:
            tolerance: 실행 가능성/최적성 허용 오차
            pivot_tolerance: 피벗 원소로 인정하는 최소 크기 (열 최대 크기 대비)
            zero_tolerance: 피벗 후 이보다 작은 항목은 0으로 정리
            iteration_factor: 반복 한도 = iteration_factor * (행 + 열)
            log_manager: 로그 매니저
        """
        self.tolerance = tolerance
        self.pivot_tolerance = pivot_tolerance
        self.zero_tolerance = zero_tolerance
        self.iteration_factor = iteration_factor
        self.log_manager = log_manager
        self.iterations = 0
        self.iteration_limit = 0

    def _pivot(self, tableau: np.ndarray, row: int, column: int):
        tableau[row] /= tableau[row, column]
        pivot_row = tableau[row]
        factors = tableau[:, column].copy()
        factors[row] = 0.0
        touched = np.flatnonzero(factors)
        if touched.size:
            # 피벗 행의 0이 아닌 열만 갱신
            active = np.flatnonzero(pivot_row)
            block = np.ix_(touched, active)
            updated = tableau[block] - np.outer(factors[touched], pivot_row[active])
            updated[np.abs(updated) < self.zero_tolerance] = 0.0
            tableau[block] = updated
            tableau[touched, column] = 0.0
        tableau[row, column] = 1.0

    def _iterate(self, tableau: np.ndarray, basis: np.ndarray, allowed: int, stop_when_feasible: bool = False) -> str:
        """비용 행(마지막 행)을 최소화합니다.

        Args:
            stop_when_feasible: 1단계에서 인공 변수 합이 허용 오차 이하가 되면 바로 종료

        Returns:
            str: optimal 또는 unbounded
        """
        rows = tableau.shape[0] - 1
        while True:
            if stop_when_feasible and -tableau[-1, -1] <= self.tolerance:
                return "optimal"
            candidates = np.flatnonzero(tableau[-1, :allowed] < -self.tolerance)
            if candidates.size == 0:
                return "optimal"
            entering = int(candidates[0])

            column = tableau[:rows, entering]
            scale = max(1.0, float(np.abs(column).max()))
            positive = column > self.pivot_tolerance * scale
            if not positive.any():
                return "unbounded"
            rhs = tableau[:rows, -1]
            ratios = np.full(rows, np.inf)
            ratios[positive] = rhs[positive] / column[positive]
            best = ratios.min()
            ties = np.flatnonzero(ratios <= best + self.pivot_tolerance * max(1.0, abs(best)))
            leaving = int(ties[np.argmin(basis[ties])])

            self._pivot(tableau, leaving, entering)
            basis[leaving] = entering
            rhs = tableau[:rows, -1]
            rhs[(rhs < 0) & (rhs > -self.tolerance)] = 0.0

            self.iterations += 1
            if self.iterations > self.iteration_limit:
                raise IterationLimitError(f"심플렉스 반복 한도 초과: {self.iteration_limit}")

    def solve(self, lp: LinearProgram) -> LpSolution:
        """LP를 풉니다.

        Args:
            lp: 선형 계획 문제

        Returns:
            LpSolution: optimal이면 허용 오차 내에서 실행 가능한 꼭짓점 해

        Raises:
            IterationLimitError: 반복 한도 초과
        """
        try:
            A, b, c, constant, transform, offset = _standard_form(lp)
            m, p = A.shape
            self.iterations = 0
            self.iteration_limit = self.iteration_factor * (m + p)

            # 우변이 음수인 행은 부호를 뒤집고 인공 변수를 둡니다.
            flip = np.where(b < 0, -1.0, 1.0)
            artificial_rows = np.flatnonzero(b < 0)
            k = artificial_rows.shape[0]
            width = p + m + k
            tableau = np.zeros((m + 1, width + 1))
            tableau[:m, :p] = A * flip[:, None]
            tableau[np.arange(m), p + np.arange(m)] = flip
            tableau[artificial_rows, p + m + np.arange(k)] = 1.0
            tableau[:m, -1] = b * flip
            basis = p + np.arange(m)
            basis[artificial_rows] = p + m + np.arange(k)

            # phase 1: 인공 변수 합 최소화
            if k:
                tableau[-1] = -tableau[artificial_rows].sum(axis=0)
                tableau[-1, p + m:width] = 0.0
                self._iterate(tableau, basis, width, stop_when_feasible=True)
                infeasibility = -tableau[-1, -1]
                if infeasibility > self.tolerance:
                    return self._finish(lp, LpSolution(status="infeasible", iterations=self.iterations))

                tableau, basis = self._drive_out_artificials(tableau, basis, p + m)

            # phase 2: 원래 목적 함수
            width = p + m
            costs = np.concatenate([c, np.zeros(m)])
            tableau[-1, :] = 0.0
            tableau[-1, :width] = costs
            for r, variable in enumerate(basis.tolist()):
                if costs[variable] != 0.0:
                    tableau[-1] -= costs[variable] * tableau[r]
            status = self._iterate(tableau, basis, width)
            if status == "unbounded":
                return self._finish(lp, LpSolution(status="unbounded", iterations=self.iterations))

            reduced = np.zeros(width)
            reduced[basis] = tableau[:-1, -1]
            values = offset + transform @ reduced[:p]
            values = np.clip(values, lp.lower, lp.upper)
            solution = LpSolution(
                status="optimal",
                values=values,
                objective=lp.objective_value(values),
                iterations=self.iterations,
                backend="simplex",
            )
            return self._finish(lp, solution)

        except Exception as e:
            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.ERROR,
                    message=f"심플렉스 풀이 실패: {str(e)}",
                    data={"rows": lp.row_count, "columns": lp.column_count, "iterations": self.iterations}
                )
            raise

    def _drive_out_artificials(self, tableau: np.ndarray, basis: np.ndarray, real_width: int) -> Tuple[np.ndarray, np.ndarray]:
        """기저에 남은 인공 변수를 제거하고 중복 행은 삭제합니다."""
        keep = []
        for r in range(basis.shape[0]):
            if basis[r] < real_width:
                keep.append(r)
                continue
            magnitudes = np.abs(tableau[r, :real_width])
            if magnitudes.max(initial=0.0) <= self.pivot_tolerance:
                continue
            # 인공 변수 값이 0에 가까우므로 가장 큰 원소로 피벗
            entering = int(np.argmax(magnitudes))
            tableau[r, -1] = 0.0
            self._pivot(tableau, r, entering)
            basis[r] = entering
            self.iterations += 1
            keep.append(r)
        rows = keep + [tableau.shape[0] - 1]
        reduced = np.hstack([tableau[rows, :real_width], tableau[rows, -1:]])
        rhs = reduced[:-1, -1]
        rhs[(rhs < 0) & (rhs > -self.tolerance)] = 0.0
        return reduced, basis[keep].copy()

    def _finish(self, lp: LinearProgram, solution: LpSolution) -> LpSolution:
        if self.log_manager:
            data = {
                "rows": lp.row_count,
                "columns": lp.column_count,
                "status": solution.status,
                "objective": solution.objective,
                "iterations": solution.iterations,
            }
            if solution.is_optimal:
                data["max_violation"] = lp.max_violation(solution.values)
            self.log_manager.log(
                category=LogCategory.LP,
                message=f"심플렉스 풀이 완료: {solution.status}",
                data=data
            )
        return solution


class HighsSolver:
    """scipy.optimize.linprog(method="highs") 백엔드"""

    def __init__(self, log_manager: Optional[LogManager] = None):
        self.log_manager = log_manager

    def solve(self, lp: LinearProgram) -> LpSolution:
        try:
            bounds = [
                (None if not np.isfinite(lo) else lo, None if not np.isfinite(hi) else hi)
                for lo, hi in zip(lp.lower.tolist(), lp.upper.tolist())
            ]
            has_rows = lp.row_count > 0
            result = linprog(
                lp.c,
                A_ub=lp.A if has_rows else None,
                b_ub=lp.b if has_rows else None,
                bounds=bounds,
                method="highs",
            )
            if result.status == 0:
                values = np.clip(np.asarray(result.x, dtype=np.float64), lp.lower, lp.upper)
                solution = LpSolution(
                    status="optimal",
                    values=values,
                    objective=lp.objective_value(values),
                    iterations=int(getattr(result, "nit", 0) or 0),
                    backend="highs",
                )
            elif result.status == 2:
                solution = LpSolution(status="infeasible", backend="highs")
            elif result.status == 3:
                solution = LpSolution(status="unbounded", backend="highs")
            elif result.status == 1:
                raise IterationLimitError(f"HiGHS 반복 한도 초과: {result.message}")
            else:
                raise CorrelationClusteringError(f"HiGHS 풀이 실패: {result.message}")

            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.LP,
                    message=f"HiGHS 풀이 완료: {solution.status}",
                    data={"rows": lp.row_count, "columns": lp.column_count, "objective": solution.objective}
                )
            return solution

        except Exception as e:
            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.ERROR,
                    message=f"HiGHS 풀이 실패: {str(e)}",
                    data={"rows": lp.row_count, "columns": lp.column_count}
                )
            raise


def solve(lp: LinearProgram, backend: Optional[str] = None, log_manager: Optional[LogManager] = None) -> LpSolution:
    """설정된 백엔드(simplex | highs)로 LP를 풉니다."""
    backend = backend or config.LP_SOLVER
    if backend == "simplex":
        return SimplexSolver(log_manager=log_manager).solve(lp)
    if backend == "highs":
        return HighsSolver(log_manager=log_manager).solve(lp)
    raise ParameterError(f"알 수 없는 LP 백엔드: {backend}")
