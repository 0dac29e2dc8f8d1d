import argparse
import json
import sys
from dataclasses import replace
from typing import List, Optional

from tabulate import tabulate

import config
from src.dual_certificate import matching_dual_certificate, star_dual_certificate, verify_dual_certificate
from src.exceptions import CorrelationClusteringError
from src.lp_builder import build_minimax_lp
from src.models.clustering import Objective
from src.models.report import PipelineOptions
from src.models.rounding import RoundingParams
from src.rounding_params import default_params, ratio_components_bipartite, ratio_components_complete
from src.signed_graphs import (
    gen_matching_instance, gen_random_bipartite, gen_star_instance, parse_instance, serialize_instance
)
from src.simplex_solver import solve
from src.sweep_runner import FAMILIES, SweepRunner, build_instance
from src.pipeline_runner import PipelineRunner
from src.utils.log_manager import LogCategory, LogManager, ReportEncoder
from src.utils.logger import setup_logger

__version__ = "0.1.0"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 3

logger = setup_logger("main")


def _params_table(params: RoundingParams, components: dict) -> str:
    rows = [[name, value] for name, value in params.to_dict().items() if value is not None]
    rows += [[name, value] for name, value in components.items()]
    return tabulate(rows, headers=["name", "value"], floatfmt=".6g")


def print_version():
    """버전과 현재 사용 중인 기본 라운딩 파라미터를 출력합니다."""
    print(f"correlation-clustering {__version__}")
    for setting, components in (("complete", ratio_components_complete), ("bipartite", ratio_components_bipartite)):
        params = default_params(setting)
        print(f"\n[{setting}]")
        print(_params_table(params, components(params)))


def _params_from_args(args: argparse.Namespace, setting: str) -> RoundingParams:
    """기본값에 --alpha/--gamma/--k1/--k2/--k3 덮어쓰기를 적용하고 검증합니다."""
    params = default_params(setting)
    overrides = {
        name: getattr(args, name)
        for name in ("alpha", "gamma", "k1", "k2", "k3")
        if getattr(args, name) is not None
    }
    if overrides:
        params = replace(params, **overrides)
    return params.validate(setting)


def _read_instance(path: str):
    if path == "-":
        return parse_instance(sys.stdin.buffer.read())
    with open(path, "rb") as f:
        return parse_instance(f.read())


def cmd_generate(args: argparse.Namespace, log_manager: LogManager) -> int:
    """인스턴스 파일을 생성합니다."""
    if args.family == "matching":
        g = build_instance("matching", _require(args.t, "--t"), args.seed)
    elif args.family == "star":
        g = build_instance("star", _require(args.n, "--n"), args.seed)
    elif args.family == "random-complete":
        g = build_instance("random-complete", _require(args.n, "--n"), args.seed, args.p_plus)
    else:
        g = gen_random_bipartite(_require(args.n1, "--n1"), _require(args.n2, "--n2"), args.p_plus, args.seed)

    data = serialize_instance(g)
    if args.out:
        with open(args.out, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    log_manager.log(
        category=LogCategory.INSTANCE,
        message=f"인스턴스 생성: {args.family}",
        data={"graph": g.describe(), "seed": args.seed, "out": args.out}
    )
    return EXIT_OK


def _require(value, flag: str):
    if value is None:
        raise CorrelationClusteringError(f"{flag} 인자가 필요합니다.")
    return value


def _pipeline_options(args: argparse.Namespace, setting: str) -> PipelineOptions:
    return PipelineOptions(
        round=args.round,
        exact=args.exact,
        acn=args.acn,
        audit=args.audit,
        seed=args.seed,
        solver=args.solver,
        params=_params_from_args(args, setting),
    )


def cmd_pipeline(args: argparse.Namespace, log_manager: LogManager) -> int:
    """인스턴스 하나에 파이프라인을 실행하고 JSON 보고서를 표준 출력으로 씁니다."""
    g = _read_instance(args.instance)
    objective = Objective.parse(args.objective)
    options = _pipeline_options(args, g.kind)
    report = PipelineRunner(log_manager=log_manager).run(g, objective, options, instance={"path": args.instance})
    print(json.dumps(report.to_dict(include_timings=not args.no_timings), ensure_ascii=False, indent=2, cls=ReportEncoder))
    return EXIT_VIOLATION if report.has_violations else EXIT_OK


def cmd_sweep(args: argparse.Namespace, log_manager: LogManager) -> int:
    """크기 범위 스윕 결과를 CSV로 표준 출력에 씁니다."""
    objective = Objective.parse(args.objective)
    setting = "bipartite" if args.family == "random-bipartite" else "complete"
    options = _pipeline_options(args, setting)
    sizes = range(args.min_size, args.max_size + 1)
    table = SweepRunner(workers=args.workers, log_manager=log_manager).run(
        args.family, sizes, args.trials, objective, args.seed, options, args.p_plus
    )
    sys.stdout.write(table.to_csv(index=False))
    return EXIT_VIOLATION if table.attrs.get("violation_rows", 0) else EXIT_OK


def cmd_certify(args: argparse.Namespace, log_manager: LogManager) -> int:
    """쌍대 인증서를 검증하고 원 문제 최적값과 비교합니다."""
    if args.family == "matching":
        g, cert = gen_matching_instance(args.size), matching_dual_certificate(args.size)
    else:
        g, cert = gen_star_instance(args.size), star_dual_certificate(args.size)
    verdict = verify_dual_certificate(g, cert, log_manager=log_manager)
    primal = solve(build_minimax_lp(g), backend=args.solver, log_manager=log_manager)

    rows = [
        ["family", args.family],
        ["size", args.size],
        ["feasible", verdict.feasible],
        ["sum(pi)", verdict.pi_sum],
        ["dual objective", verdict.objective],
        ["claimed objective", cert.claimed_objective],
        ["primal objective", primal.objective],
        ["gap", None if primal.objective is None else primal.objective - verdict.objective],
        ["slack + edges", " ".join(f"{u}-{v}" for u, v in verdict.slack_pairs) or "-"],
    ]
    print(tabulate(rows, headers=["item", "value"], floatfmt=".9g"))
    for violation in verdict.violations:
        print(f"violation: {violation}", file=sys.stderr)
    return EXIT_OK if verdict.feasible else EXIT_VIOLATION


def cmd_params(args: argparse.Namespace, log_manager: LogManager) -> int:
    """파라미터 조합을 검증하고 c1, c2, c3와 근사 비율을 출력합니다."""
    setting = "bipartite" if args.bipartite else "complete"
    params = _params_from_args(args, setting)
    components = ratio_components_bipartite(params) if args.bipartite else ratio_components_complete(params)
    print(_params_table(params, components))
    return EXIT_OK


def _add_param_overrides(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("rounding parameters")
    for name in ("alpha", "gamma", "k1", "k2", "k3"):
        group.add_argument(f"--{name}", type=float, default=None)


def _add_pipeline_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--objective", default="linf", help="linf | l1 | lp:<p>")
    parser.add_argument("--round", action=argparse.BooleanOptionalAction, default=True)
    parser.add_argument("--exact", action="store_true", help="정확 탐색 실행 (n <= %d)" % config.ORACLE_MAX_VERTICES)
    parser.add_argument("--acn", action="store_true", help="ACN 기준선 실행")
    parser.add_argument("--audit", action="store_true", help="교차 간선 감사 실행")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--solver", choices=["simplex", "highs"], default=config.LP_SOLVER)
    _add_param_overrides(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="국소 목적 함수 상관 클러스터링: LP 완화, 임계값 라운딩, 정확 탐색, 기준선"
    )
    parser.add_argument("--version", action="store_true", help="버전과 기본 파라미터 출력")
    subparsers = parser.add_subparsers(dest="command")

    generate = subparsers.add_parser("generate", help="인스턴스 파일 생성")
    generate.add_argument("family", choices=FAMILIES)
    generate.add_argument("--t", type=int)
    generate.add_argument("--n", type=int)
    generate.add_argument("--n1", type=int)
    generate.add_argument("--n2", type=int)
    generate.add_argument("--p-plus", type=float, default=0.5)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", default=None)

    pipeline = subparsers.add_parser("pipeline", help="인스턴스 하나에 파이프라인 실행")
    pipeline.add_argument("instance", help="인스턴스 파일 경로 ('-'는 표준 입력)")
    pipeline.add_argument("--no-timings", action="store_true", help="보고서에서 timings 제외")
    _add_pipeline_flags(pipeline)

    sweep = subparsers.add_parser("sweep", help="크기 범위 스윕 (CSV)")
    sweep.add_argument("family", choices=FAMILIES)
    sweep.add_argument("--min-size", type=int, required=True)
    sweep.add_argument("--max-size", type=int, required=True)
    sweep.add_argument("--trials", type=int, default=1)
    sweep.add_argument("--p-plus", type=float, default=0.5)
    sweep.add_argument("--workers", type=int, default=config.SWEEP_WORKERS)
    _add_pipeline_flags(sweep)

    certify = subparsers.add_parser("certify", help="쌍대 인증서 검증")
    certify.add_argument("family", choices=["matching", "star"])
    certify.add_argument("--size", type=int, required=True)
    certify.add_argument("--solver", choices=["simplex", "highs"], default=config.LP_SOLVER)

    params = subparsers.add_parser("params", help="라운딩 파라미터 검증과 비율 상수")
    params.add_argument("--bipartite", action="store_true")
    _add_param_overrides(params)

    return parser


COMMANDS = {
    "generate": cmd_generate,
    "pipeline": cmd_pipeline,
    "sweep": cmd_sweep,
    "certify": cmd_certify,
    "params": cmd_params,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.version:
        print_version()
        return EXIT_OK
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    log_manager = LogManager()
    with log_manager.session(args.command):
        try:
            return COMMANDS[args.command](args, log_manager)
        except (CorrelationClusteringError, OSError) as e:
            logger.error(f"{args.command} 실패: {str(e)}")
            log_manager.log(
                category=LogCategory.ERROR,
                message=f"{args.command} 실패: {str(e)}",
                data={"command": args.command}
            )
            print(f"error: {e}", file=sys.stderr)
            return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
