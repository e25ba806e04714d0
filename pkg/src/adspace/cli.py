"""Command line front end.

Exit codes: 0 success, 1 a produced or supplied schedule is infeasible,
2 usage or input error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import ALGORITHMS, SUITES, parse_seeds, run_algorithm, run_suite, write_csv
from .core import default_budget, format_rational, parse_rational, total_fullness, verify
from .errors import AdspaceError, BudgetExceeded
from .fileformat import format_schedule, parse_instance, parse_schedule, serialize_instance
from .generate import DISTRIBUTIONS, generate

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _rational_arg(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adspace", description="MAXSPACE ad-scheduling solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance", type=Path)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="combined")
    p.add_argument("--eps-prime", type=_rational_arg, default=_rational_arg("1/2"))
    p.add_argument("--internal-eps", type=_rational_arg, default=None,
                   help="override the PTAS accuracy (1/eps must be an integer); voids the guarantee")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget (default $ADSPACE_BUDGET or 10^6)")
    p.add_argument("--sink-capacity-no-eps", action="store_true",
                   help="PTAS flow sink edges |t|*c_t instead of |t|*c_t*eps")

    p = sub.add_parser("verify", help="check a schedule file against an instance")
    p.add_argument("instance", type=Path)
    p.add_argument("schedule", type=Path)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--variant", choices=["maxspace", "maxspace-r", "maxspace-rd"], default="maxspace-rd")
    p.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=_rational_arg, default=None, help="epsilon for ptas-small")
    p.add_argument("-o", "--out", type=Path, default=None)

    p = sub.add_parser("bench", help="ratio table against the exhaustive oracle")
    p.add_argument("--suite", choices=sorted(SUITES), default="ratios")
    p.add_argument("--seeds", default="1..20")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _solve(args) -> int:
    instance = parse_instance(args.instance.read_text(encoding="utf-8"))
    budget = args.budget if args.budget is not None else default_budget()
    sched, info = run_algorithm(
        args.algorithm,
        instance,
        eps_prime=args.eps_prime,
        budget=budget,
        internal_eps=args.internal_eps,
        sink_capacity_no_eps=args.sink_capacity_no_eps,
    )
    report = verify(instance, sched)
    if not report.feasible:
        print(f"internal error: {args.algorithm} produced an infeasible schedule\n{report}", file=sys.stderr)
        return EXIT_INFEASIBLE
    sys.stdout.write(format_schedule(sched, total_fullness(instance, sched)))
    if info.get("budget_exceeded"):
        print(f"# guarantee void: {info['message']}")
        return EXIT_BUDGET
    if info.get("guarantee_void"):
        print(f"# guarantee void: internal epsilon overridden to {format_rational(info['epsilon'])}")
    return EXIT_OK


def _verify(args) -> int:
    instance = parse_instance(args.instance.read_text(encoding="utf-8"))
    sched, claimed = parse_schedule(args.schedule.read_text(encoding="utf-8"))
    report = verify(instance, sched)
    print(report)
    if report.feasible:
        value = total_fullness(instance, sched)
        print(f"value {format_rational(value)}")
        if claimed is not None and claimed != value:
            print(f"warning: file claims value {format_rational(claimed)}")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _generate(args) -> int:
    instance = generate(args.n, args.K, args.variant, args.distribution, args.seed, epsilon=args.eps)
    text = serialize_instance(instance)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return EXIT_OK


def _bench(args) -> int:
    records = run_suite(args.suite, parse_seeds(args.seeds), budget=args.budget)
    if args.out is None:
        write_csv(records, sys.stdout)
    else:
        with args.out.open("w", newline="", encoding="utf-8") as fh:
            write_csv(records, fh)
    return EXIT_OK if all(r.feasible for r in records) else EXIT_INFEASIBLE


COMMANDS = {"solve": _solve, "verify": _verify, "generate": _generate, "bench": _bench}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AdspaceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
