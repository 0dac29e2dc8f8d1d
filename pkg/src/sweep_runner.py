from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Dict, Iterable, List, Literal, Optional, Tuple

import pandas as pd

import config
from src.acn_baseline import trial_seeds
from src.exceptions import ParameterError
from src.models.clustering import Objective
from src.models.report import PipelineOptions
from src.models.signed_graph import SignedGraph
from src.pipeline_runner import PipelineRunner
from src.signed_graphs import gen_matching_instance, gen_random_bipartite, gen_random_complete, gen_star_instance
from src.utils.log_manager import LogCategory, LogManager

FamilyType = Literal["matching", "star", "random-complete", "random-bipartite"]
FAMILIES = ("matching", "star", "random-complete", "random-bipartite")

# 스윕 CSV 열 (고정)
COLUMNS = [
    "family", "n", "seed", "objective", "lp_value", "rounded_value",
    "exact_value", "acn_value", "ratio", "c", "audit_violations",
]


def build_instance(family: str, size: int, seed: int, p_plus: float = 0.5) -> SignedGraph:
    """인스턴스 계열과 크기로 그래프를 생성합니다.

    matching: t = size, star: n = size, random-complete: n = size,
    random-bipartite: n1 = n2 = size.
    """
    if family == "matching":
        return gen_matching_instance(size)
    if family == "star":
        return gen_star_instance(size)
    if family == "random-complete":
        return gen_random_complete(size, p_plus, seed)
    if family == "random-bipartite":
        return gen_random_bipartite(size, size, p_plus, seed)
    raise ParameterError(f"알 수 없는 인스턴스 계열: {family} (가능: {', '.join(FAMILIES)})")


class SweepRunner:
    """인스턴스 계열 x 크기 범위 x 시행에 대해 파이프라인을 실행하고 표로 모읍니다."""

    def __init__(self, workers: int = config.SWEEP_WORKERS, log_manager: Optional[LogManager] = None):
        """
        Args:
            workers: 동시 실행 쓰레드 수
            log_manager: 로그 매니저
        """
        self.workers = max(int(workers), 1)
        self.log_manager = log_manager
        self.runner = PipelineRunner(log_manager=log_manager)

    def _row(self, family: str, size: int, seed: int, objective: Objective, options: PipelineOptions, p_plus: float) -> Tuple[Dict, bool]:
        g = build_instance(family, size, seed, p_plus)
        report = self.runner.run(
            g, objective, replace(options, seed=seed),
            instance={"family": family, "size": size, "seed": seed},
        )
        row = {
            "family": family,
            "n": g.vertex_count,
            "seed": seed,
            "objective": objective.label,
            "lp_value": report.lp_value,
            "rounded_value": report.rounded_value,
            "exact_value": report.exact_value,
            "acn_value": report.acn_value,
            "ratio": report.ratio,
            "c": report.ratio_constant,
            "audit_violations": report.audit_violations,
        }
        return row, report.has_violations

    def run(
        self,
        family: str,
        sizes: Iterable[int],
        trials: int,
        objective: Objective,
        seed: int,
        options: Optional[PipelineOptions] = None,
        p_plus: float = 0.5
    ) -> pd.DataFrame:
        """스윕을 실행합니다.

        Args:
            family: 인스턴스 계열
            sizes: 크기 목록 (비어 있으면 헤더만 있는 표)
            trials: 크기별 시행 수
            objective: 목적 함수
            seed: 기준 시드 (시행별 시드는 여기서 파생)
            options: 파이프라인 옵션 (시드는 시행별 시드로 대체)
            p_plus: 무작위 계열의 + 확률

        Returns:
            pd.DataFrame: 입력 열거 순서대로 정렬된 결과 표
        """
        if family not in FAMILIES:
            raise ParameterError(f"알 수 없는 인스턴스 계열: {family} (가능: {', '.join(FAMILIES)})")
        if trials < 1:
            raise ParameterError(f"trials는 1 이상이어야 합니다: {trials}")
        options = options or PipelineOptions(solver=config.LP_SOLVER)
        seeds = trial_seeds(seed, trials)
        jobs: List[Tuple[int, int]] = [(size, s) for size in sizes for s in seeds]

        try:
            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.SWEEP,
                    message=f"스윕 시작: {family}",
                    data={"family": family, "jobs": len(jobs), "objective": objective.label, "workers": self.workers}
                )
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                results = list(executor.map(
                    lambda job: self._row(family, job[0], job[1], objective, options, p_plus), jobs
                ))
            table = pd.DataFrame([row for row, _ in results], columns=COLUMNS)
            table["audit_violations"] = table["audit_violations"].astype("Int64")
            # 정점별 위반 또는 감사 위반이 있었던 행 수
            table.attrs["violation_rows"] = sum(1 for _, violated in results if violated)
            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.SWEEP,
                    message=f"스윕 완료: {family}",
                    data={"rows": len(table), "violation_rows": table.attrs["violation_rows"]}
                )
            return table

        except Exception as e:
            if self.log_manager:
                self.log_manager.log(
                    category=LogCategory.ERROR,
                    message=f"스윕 실패: {str(e)}",
                    data={"family": family}
                )
            raise
