import time
from typing import Dict, Optional

import config
from src.acn_baseline import acn_cluster
from src.clustering_core import error_vector, objective_on_graph
from src.cross_edge_audit import audit_cross_edge_bound
from src.exact_oracle import exact_best
from src.exceptions import CorrelationClusteringError, ParameterError
from src.lp_builder import build_l1_lp, build_minimax_lp, fractional_from_solution
from src.models.clustering import FractionalClustering, Objective
from src.models.report import PipelineOptions, RunReport
from src.models.signed_graph import SignedGraph
from src.rounding_params import default_params, ratio_constant
from src.simplex_solver import solve
from src.threshold_rounder import ThresholdRounder, check_per_vertex_bound
from src.utils.log_manager import LogCategory, LogManager


class PipelineRunner:
    """LP 완화 → 라운딩 → (정확 탐색, ACN, 감사) 파이프라인"""

    def __init__(self, log_manager: Optional[LogManager] = None):
        """
        Args:
            log_manager: 로그 매니저
        """
        self.log_manager = log_manager

    def _log(self, category: str, message: str, data: Optional[Dict] = None):
        if self.log_manager:
            self.log_manager.log(category=category, message=message, data=data)

    def solve_relaxation(self, g: SignedGraph, objective: Objective, solver: str) -> FractionalClustering:
        """목적 함수에 맞는 LP(linf: 최소최대, l1: 고전)를 풀어 분수 클러스터링을 얻습니다."""
        lp = build_minimax_lp(g) if objective.kind == "linf" else build_l1_lp(g)
        solution = solve(lp, backend=solver, log_manager=self.log_manager)
        if not solution.is_optimal:
            raise CorrelationClusteringError(f"LP 완화 문제를 풀 수 없습니다: status={solution.status}")
        return fractional_from_solution(lp, solution)

    def run(
        self,
        g: SignedGraph,
        objective: Objective,
        options: Optional[PipelineOptions] = None,
        instance: Optional[Dict] = None
    ) -> RunReport:
        """파이프라인을 실행합니다.

        Args:
            g: 부호 그래프
            objective: 목적 함수 (lp:<p>는 exact와 함께만 허용, LP/라운딩 생략)
            options: 실행 옵션
            instance: 보고서에 넣을 인스턴스 설명 (그래프 설명에 덧붙임)

        Returns:
            RunReport: 실행 보고서
        """
        options = options or PipelineOptions(solver=config.LP_SOLVER)
        try:
            # 파라미터는 작업 전에 검증
            params = options.params or default_params(g.kind)
            params.validate(g.kind)
            constant = ratio_constant(g.kind, params)

            relaxable = objective.kind in ("linf", "l1-mean")
            if not relaxable and not options.exact:
                raise ParameterError(f"{objective.label} 목적 함수는 --exact와 함께만 사용할 수 있습니다.")
            if options.audit and not options.round:
                raise ParameterError("감사(--audit)에는 라운딩이 필요합니다.")

            report = RunReport(
                instance={**g.describe(), **(instance or {})},
                objective=objective.label,
                ratio_constant=constant,
                params=params.to_dict(),
            )

            if relaxable:
                started = time.perf_counter()
                x = self.solve_relaxation(g, objective, options.solver)
                report.lp_value = objective_on_graph(g, objective, error_vector(g, x))
                report.solver = options.solver
                report.timings["lp"] = time.perf_counter() - started

                if options.round:
                    started = time.perf_counter()
                    rounder = ThresholdRounder(params=params, log_manager=self.log_manager)
                    clustering, trace = rounder.round(g, x, record_trace=options.audit, tolerance=config.LP_TOLERANCE)
                    errors = error_vector(g, clustering)
                    report.rounded_errors = errors.tolist()
                    report.rounded_value = objective_on_graph(g, objective, errors)
                    report.clusters = clustering.clusters()
                    report.per_vertex_violations = [
                        v.to_dict() for v in check_per_vertex_bound(g, x, clustering, constant)
                    ]
                    if report.lp_value > 0:
                        report.ratio = report.rounded_value / report.lp_value
                    report.timings["round"] = time.perf_counter() - started

                    if options.audit:
                        started = time.perf_counter()
                        audit = audit_cross_edge_bound(g, x, trace, params, log_manager=self.log_manager)
                        report.audit_violations = len(audit.violations)
                        report.timings["audit"] = time.perf_counter() - started

            if options.exact:
                started = time.perf_counter()
                report.exact_value = exact_best(g, objective, log_manager=self.log_manager).value
                report.timings["exact"] = time.perf_counter() - started

            if options.acn:
                started = time.perf_counter()
                clustering = acn_cluster(g, options.seed)
                report.acn_value = objective_on_graph(g, objective, error_vector(g, clustering))
                report.seeds["acn"] = options.seed
                report.timings["acn"] = time.perf_counter() - started

            self._log(
                LogCategory.SYSTEM,
                "파이프라인 실행 완료",
                report.to_dict(include_timings=False)
            )
            return report

        except Exception as e:
            self._log(
                LogCategory.ERROR,
                f"파이프라인 실행 실패: {str(e)}",
                {"graph": g.describe(), "objective": objective.label}
            )
            raise
