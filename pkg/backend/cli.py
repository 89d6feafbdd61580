"""
Command-line surface: solve, resume, oracle, check, replay, fuzz
"""
import argparse
import json
import logging
import sys
from datetime import datetime
from pathlib import Path

from .config import (
    DEFAULT_H,
    FUZZ_COUNT,
    FUZZ_M_MAX,
    FUZZ_N_MAX,
    FUZZ_RANGE,
    FUZZ_SEED,
    FUZZ_WORKERS,
    LOG_LEVEL,
    RESULTS_DIR,
)
from .exact_core import DimensionError, parse_rational
from .fuzz_service import classify, fuzz_run, replay_record
from .io_service import (
    ProblemFileError,
    load_counterexample,
    load_problem,
    load_state,
    oracle_to_json,
    outcome_to_json,
    pmrp_outcome_to_json,
    write_trace,
)
from .lpp_service import lpp_solve
from .oracle_service import simplex_solve, verify_solution
from .pmrp_service import run_pmrp

EXIT_OK = 0
EXIT_DIVERGENCE = 2
EXIT_INPUT = 3

logger = logging.getLogger(__name__)


def _emit(data) -> None:
    print(json.dumps(data, ensure_ascii=False, indent=2))


def cmd_solve(args) -> int:
    problem = load_problem(args.file)
    A, b, c = problem.data()
    h = parse_rational(args.h)
    outcome = lpp_solve(A, b, c, h_value=h, primal_witness=args.witness)
    data = outcome_to_json(outcome)
    code = EXIT_OK
    if args.trace:
        lines = write_trace(outcome, args.trace)
        logger.info("wrote %d trace records to %s", lines, args.trace)
    if args.oracle_check:
        oracle = simplex_solve(A, b, c)
        data["oracle"] = oracle_to_json(oracle)
        data["divergence"] = classify(outcome if h == 1 else lpp_solve(A, b, c), oracle)
        if data["divergence"] != "agree":
            code = EXIT_DIVERGENCE
    _emit(data)
    return code


def cmd_resume(args) -> int:
    state = load_state(args.file)
    outcome = run_pmrp(state.to_tableau())
    _emit(pmrp_outcome_to_json(outcome, include_trace=args.trace))
    return EXIT_OK


def cmd_oracle(args) -> int:
    A, b, c = load_problem(args.file).data()
    _emit(oracle_to_json(simplex_solve(A, b, c)))
    return EXIT_OK


def cmd_check(args) -> int:
    A, b, c = load_problem(args.file).data()
    x = [parse_rational(v) for v in args.x]
    if len(x) != len(c):
        raise DimensionError(f"--x needs {len(c)} values, got {len(x)}")
    ok = verify_solution(A, b, c, x, parse_rational(args.z))
    _emit({"valid": ok})
    return EXIT_OK if ok else EXIT_DIVERGENCE


def cmd_replay(args) -> int:
    record = load_counterexample(args.record)
    result = replay_record(record)
    _emit(result)
    if not result["reproduced"]:
        logger.warning("record %s did not reproduce", args.record)
    return EXIT_OK if result["divergence"] == "agree" and result["reproduced"] else EXIT_DIVERGENCE


def cmd_fuzz(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = fuzz_run(args.m, args.n, args.count, args.seed, args.range, out_dir=out_dir, workers=args.workers)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    report_file = out_dir / f"fuzz_report_{timestamp}.json"
    with open(report_file, 'w', encoding='utf-8') as f:
        json.dump(report, f, ensure_ascii=False, indent=2)

    print("=" * 80)
    print("FUZZ CAMPAIGN")
    print("=" * 80)
    for name, count in report["tallies"].items():
        print(f"  {name:<16} {count}")
    print("─" * 80)
    print(f"  certificate failures: {len(report['certificate_failures'])}")
    print(f"  budget breaches:      {len(report['budget_breaches'])}")
    print(f"  records written:      {len(report['records'])}")
    print(f"  report:               {report_file}")

    diverged = sum(v for k, v in report["tallies"].items() if k != "agree")
    if diverged or report["certificate_failures"] or report["budget_breaches"]:
        return EXIT_DIVERGENCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpp", description="Exact substitution-method LP solver")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="logging level (default from PMRP_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a problem file")
    solve.add_argument("file")
    solve.add_argument("--trace", help="write the step trace as JSON Lines")
    solve.add_argument("--h", default=DEFAULT_H, help="h at which the solution is reported")
    solve.add_argument("--oracle-check", action="store_true", help="compare with the reference simplex")
    solve.add_argument("--witness", action="store_true", help="attach a primal point from the reference simplex")
    solve.set_defaults(func=cmd_solve)

    resume = sub.add_parser("resume", help="continue the positive-maximum search from a saved tableau")
    resume.add_argument("file")
    resume.add_argument("--trace", action="store_true", help="include the step records")
    resume.set_defaults(func=cmd_resume)

    oracle = sub.add_parser("oracle", help="solve with the reference simplex")
    oracle.add_argument("file")
    oracle.set_defaults(func=cmd_oracle)

    check = sub.add_parser("check", help="verify a candidate solution exactly")
    check.add_argument("file")
    check.add_argument("--x", nargs="+", required=True)
    check.add_argument("--z", required=True)
    check.set_defaults(func=cmd_check)

    replay = sub.add_parser("replay", help="re-run a counterexample record")
    replay.add_argument("record")
    replay.set_defaults(func=cmd_replay)

    fuzz = sub.add_parser("fuzz", help="random cross-validation campaign")
    fuzz.add_argument("--m", type=int, default=FUZZ_M_MAX)
    fuzz.add_argument("--n", type=int, default=FUZZ_N_MAX)
    fuzz.add_argument("--count", type=int, default=FUZZ_COUNT)
    fuzz.add_argument("--seed", type=int, default=FUZZ_SEED)
    fuzz.add_argument("--range", type=int, default=FUZZ_RANGE)
    fuzz.add_argument("--out", default=RESULTS_DIR)
    fuzz.add_argument("--workers", type=int, default=FUZZ_WORKERS)
    fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ProblemFileError, DimensionError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
