"""Command-line front end.

Exit status: 0 on success, 1 on usage or parse errors, 2 when a run fails
its own verification (a violated optimality criterion, a corral count that
differs from the prediction).
"""
import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .fileio import (
    FormatError,
    dump_instance,
    event_line,
    format_rational,
    format_vector,
    read_instance,
    read_lp,
    stage_record,
)
from .hard import generate_pd, verify_exponential
from .rational import to_decimal, wolfe_violators
from .reductions import LPStatus, lift_to_simplex, lp_to_fp, reduce_fp, solve_lp
from .wolfe import Rule, solve

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunReport:
    rule: str
    corral_count: int
    minor_cycle_total: int
    final_corral: list
    x_star: list
    x_star_decimal: list
    wall_time: float

    def as_text(self) -> str:
        return "\n".join([
            f"rule          {self.rule}",
            f"corrals       {self.corral_count}",
            f"minor cycles  {self.minor_cycle_total}",
            f"final corral  {{{', '.join(self.final_corral)}}}",
            f"x*            ({', '.join(self.x_star)})",
            f"x* (decimal)  ({', '.join(self.x_star_decimal)})",
            f"time          {self.wall_time:.3f}s",
        ])


def _emit(args, text: str, record: dict) -> None:
    if args.format == "jsonl":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def cmd_solve(args) -> int:
    instance = read_instance(args.instance)
    rule = Rule(args.rule)
    trace_fh = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        on_event = None
        if trace_fh is not None:
            def on_event(ev):
                trace_fh.write(event_line(ev, instance, args.precision))
        start = time.perf_counter()
        result = solve(instance, rule, on_event)
        elapsed = time.perf_counter() - start
    finally:
        if trace_fh is not None:
            trace_fh.close()
    report = RunReport(
        rule=rule.value,
        corral_count=len(result.corrals),
        minor_cycle_total=result.minor_cycles,
        final_corral=[instance.label(i) for i in result.corral],
        x_star=format_vector(result.x),
        x_star_decimal=[to_decimal(c, args.precision) for c in result.x],
        wall_time=elapsed,
    )
    _emit(args, report.as_text(), {"kind": "report", **report.__dict__})
    bad = wolfe_violators(result.x, instance.points)
    if bad:
        print(f"verification failed: points {sorted(bad)} violate optimality",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_gen_hard(args) -> int:
    if args.d < 1 or args.d % 2 == 0:
        raise UsageError(f"d must be an odd positive integer, got {args.d}")
    record = generate_pd(args.d)
    text = dump_instance(record.instance)
    if args.out == "-":
        sys.stdout.write(text)
        out = sys.stderr
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out = sys.stdout
    print(f"d={record.d} points={len(record.instance)} "
          f"M_d={format_rational(record.max_l1)} m_d={format_rational(record.min_inf)}",
          file=out)
    return EXIT_OK


def cmd_verify_exponential(args) -> int:
    if args.d_max < 1 or args.d_max % 2 == 0:
        raise UsageError(f"d_max must be an odd positive integer, got {args.d_max}")
    rule = Rule(args.rule)
    failed = False
    if args.format == "text":
        print(f"{'d':>3} {'predicted':>10} {'observed':>9}  match")
    for d in range(1, args.d_max + 1, 2):
        rep = verify_exponential(d, rule)
        if rule is Rule.MINNORM:
            match = "yes" if rep.match else "NO"
            failed |= not rep.match
        else:
            match = "n/a"
        _emit(args, f"{d:>3} {rep.predicted:>10} {rep.observed:>9}  {match}",
              {"d": d, "predicted": rep.predicted, "observed": rep.observed,
               "match": match, "rule": rule.value})
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_solve_lp(args) -> int:
    lp = read_lp(args.lp)
    start = time.perf_counter()
    outcome = solve_lp(lp)
    elapsed = time.perf_counter() - start
    record = {"status": outcome.status.value, "wall_time": elapsed}
    lines = [outcome.status.value]
    if outcome.status is LPStatus.OPTIMAL:
        obj = outcome.objective(lp)
        record.update(x=format_vector(outcome.x), objective=format_rational(obj),
                      x_decimal=[to_decimal(v, args.precision) for v in outcome.x],
                      objective_decimal=to_decimal(obj, args.precision))
        lines += [f"x          ({', '.join(record['x'])})",
                  f"objective  {record['objective']} ({record['objective_decimal']})"]
    lines.append(f"time       {elapsed:.3f}s")
    _emit(args, "\n".join(lines), record)
    return EXIT_OK


def cmd_reduce(args) -> int:
    lp = read_lp(args.lp)
    feas, kkt = lp_to_fp(lp)
    stages = reduce_fp(feas if args.system == "feasibility" else kkt)
    records = [stage_record(s) for s in stages]
    lifted = lift_to_simplex(stages[-1].points)
    records.append({
        "stage": "DVS",
        "rows": len(lifted.points[0]),
        "cols": len(lifted.points),
        "lift_rows": lifted.lift_rows,
        "epsilon": format_rational(lifted.bound.epsilon),
        "threshold": format_rational(lifted.bound.threshold),
        "points": [format_vector(p) for p in lifted.points],
    })
    lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if args.out == "-":
        sys.stdout.write(lines)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(lines)
        for r in records:
            print(f"{r['stage']:<6} {r['rows']} x {r['cols']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minnorm",
                     description="Exact Wolfe minimum-norm-point runs and LP reductions.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s (kernel backend: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, rule=False, precision=False):
        p.add_argument("--format", choices=("text", "jsonl"), default="text")
        if rule:
            p.add_argument("--rule", choices=[r.value for r in Rule], default="minnorm")
        if precision:
            p.add_argument("--precision", type=int, default=4, metavar="N",
                           help="decimal places in renderings (default 4)")

    p = sub.add_parser("solve", help="run Wolfe's method on an instance file")
    p.add_argument("instance")
    p.add_argument("--trace", metavar="PATH", help="write one JSON event per line")
    common(p, rule=True, precision=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen-hard", help="write the hard instance in odd dimension d")
    p.add_argument("d", type=int)
    p.add_argument("out", help="output path, or - for stdout")
    p.set_defaults(func=cmd_gen_hard)

    p = sub.add_parser("verify-exponential",
                       help="compare corral counts with the prediction for d = 1, 3, ..., d_max")
    p.add_argument("d_max", type=int)
    common(p, rule=True)
    p.set_defaults(func=cmd_verify_exponential)

    p = sub.add_parser("solve-lp", help="solve max c.x, Ax <= b through the reduction chain")
    p.add_argument("lp")
    common(p, precision=True)
    p.set_defaults(func=cmd_solve_lp)

    p = sub.add_parser("reduce", help="dump every stage of the reduction chain as JSONL")
    p.add_argument("lp")
    p.add_argument("--system", choices=("feasibility", "kkt"), default="feasibility")
    p.add_argument("--out", default="-", metavar="PATH")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "precision", 0) < 0:
        print("minnorm: error: --precision must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"minnorm: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, OSError) as exc:
        print(f"minnorm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
