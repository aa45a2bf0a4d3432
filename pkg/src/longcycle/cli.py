"""Command-line interface.

Exit codes: 0 when every checked guarantee held, 1 for bad input or usage,
2 when a lemma or bound check failed (which indicates a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, TextIO

from .branching import final_out_branching, level_profile, verify_final
from .digraph import average_out_degree, check_cut_balance, eulerian_defect, require_eulerian
from .errors import GuaranteeViolation, InputError
from .extraction import (
    bound_value,
    certified_long_cycle,
    certified_long_path,
    counting_report,
    cycle_from_final,
    format_rational,
    longest_back_arc,
    path_from_final,
    satisfies_bound,
)
from .generators import FAMILIES, GenSpec, generate
from .graphio import read_graph, write_graph
from .oracle import exhaustive_small_sweep, run_oracle

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


@dataclass
class RunReport:
    command: str
    input: Optional[str] = None
    outcome: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _steps(text: str) -> tuple:
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="longcycle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="validate that a graph file is Eulerian")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cycle", help="extract a certified long cycle")
    p.add_argument("file")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--all-roots", action="store_true", help="try every root, keep the longest")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("path", help="extract a certified long path from a start vertex")
    p.add_argument("file")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="check finality, cut balance and counting bounds")
    p.add_argument("file")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="count against the brute-force circumference")
    p.add_argument("--trace", action="store_true", help="print every elementary operation")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="write a generated Eulerian digraph")
    _add_gen_args(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="brute-force circumference and longest paths (n <= 14)")
    p.add_argument("file")
    p.add_argument("--node-budget", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="exhaustively check all Eulerian digraphs on n <= 5 vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bench", help="batch runs of a generator family")
    _add_gen_args(p)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--all-roots", action="store_true")
    p.add_argument("--json", action="store_true")
    return parser


def _add_gen_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=_steps, help="circulant steps, e.g. 1,2,3")
    p.add_argument("--k", type=int, help="cycle_union cycle count")
    p.add_argument("--seed", type=int, help="cycle_union seed (bench: seed of the first trial)")


def _gen_spec(args, seed_offset: int = 0) -> GenSpec:
    seed = args.seed
    if args.family == "cycle_union":
        seed = (seed or 0) + seed_offset
    return GenSpec(args.family, args.n, steps=args.steps, k=args.k, seed=seed)


def _style(text: str, ok: bool, out: TextIO) -> str:
    if os.environ.get("NO_COLOR") or not getattr(out, "isatty", lambda: False)():
        return text
    return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"


def _emit(payload: dict, as_json: bool, out: TextIO) -> None:
    if as_json:
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, list):
            value = " ".join(map(str, value))
        elif isinstance(value, float):
            value = f"{value:.6g}"
        out.write(f"{key}: {value}\n")


def _cmd_check(args, out) -> RunReport:
    D, _ = read_graph(args.file)
    reason = eulerian_defect(D)
    payload = {"n": D.n, "m": D.m, "d": format_rational(average_out_degree(D)), "eulerian": reason is None}
    if reason is not None:
        payload["reason"] = reason
    if args.json:
        _emit(payload, True, out)
    else:
        out.write(f"n={D.n} m={D.m} d={payload['d']}\n")
        verdict = "Eulerian" if reason is None else f"not Eulerian: {reason}"
        out.write(_style(verdict, reason is None, out) + "\n")
    return RunReport("check", args.file, payload, EXIT_OK if reason is None else EXIT_INPUT)


def _cmd_cycle(args, out) -> RunReport:
    D, _ = read_graph(args.file)
    require_eulerian(D)
    if args.all_roots:
        lengths = []
        best = None
        for r in range(D.n):
            cycle, report = certified_long_cycle(D, r)
            lengths.append(cycle.length)
            if best is None or cycle.length > best[1].length:
                best = (r, cycle, report)
        root, cycle, report = best
    else:
        root = args.root
        cycle, report = certified_long_cycle(D, root)
    payload = {"root": root, "cycle": list(cycle.vertices)}
    payload.update(report.to_dict())
    if args.all_roots:
        payload["per_root_lengths"] = lengths
    _emit(payload, args.json, out)
    return RunReport("cycle", args.file, payload)


def _cmd_path(args, out) -> RunReport:
    D, _ = read_graph(args.file)
    path, report = certified_long_path(D, args.start)
    payload = {"path": list(path.vertices), "length": path.length}
    payload.update(report.to_dict())
    _emit(payload, args.json, out)
    return RunReport("path", args.file, payload)


def _cmd_verify(args, out) -> RunReport:
    D, _ = read_graph(args.file)
    require_eulerian(D)
    if D.n < 2:
        raise InputError("verify needs at least 2 vertices")
    events = []
    F, ops = final_out_branching(D, args.root, check=True, trace=events.append if args.trace else None)
    witness = verify_final(F)
    profile = level_profile(F)
    for i in range(len(profile.sets)):
        check_cut_balance(D, profile.prefix(i))
    best = longest_back_arc(F)
    t = run_oracle(D).circumference if args.oracle else F.level[best[0]] - F.level[best[1]] + 1
    payload = {
        "root": args.root,
        "op_count": ops,
        "op_budget": D.n * (D.n - 1),
        "level_sum": profile.level_sum,
        "depth": F.depth,
        "violating_arcs": len(witness.violating),
        "same_level_arcs": len(witness.same_level),
        "balanced_level_prefixes": len(profile.sets),
        "t_source": "oracle" if args.oracle else "extracted",
    }
    payload.update(counting_report(D, F, t).to_dict())
    passed = witness.passed and payload["inequality_holds"] and ops <= payload["op_budget"]
    payload["passed"] = passed
    if args.trace and not args.json:
        for event in events:
            out.write(f"{event}\n")
    _emit(payload, args.json, out)
    if not args.json:
        out.write(_style("PASS", True, out) + "\n" if passed else _style("FAIL", False, out) + "\n")
    return RunReport("verify", args.file, payload, EXIT_OK if passed else EXIT_VIOLATION)


def _cmd_gen(args, out) -> RunReport:
    spec = _gen_spec(args)
    D = generate(spec)
    write_graph(args.output, D, spec)
    payload = {"output": args.output, "header": spec.to_header(), "n": D.n, "m": D.m}
    _emit(payload, args.json, out)
    return RunReport("gen", spec.to_header(), payload)


def _cmd_oracle(args, out) -> RunReport:
    D, _ = read_graph(args.file)
    result = run_oracle(D, args.node_budget)
    payload = {"n": D.n, "m": D.m}
    payload.update(result.to_dict())
    _emit(payload, args.json, out)
    return RunReport("oracle", args.file, payload)


def _cmd_sweep(args, out) -> RunReport:
    summary = exhaustive_small_sweep(args.n, workers=args.workers)
    payload = summary.to_dict()
    _emit(payload, args.json, out)
    return RunReport("sweep", f"n={args.n}", payload, EXIT_VIOLATION if summary.failures else EXIT_OK)


def _cmd_bench(args, out) -> RunReport:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    cycle_lengths, path_lengths = [], []
    d = None
    started = time.perf_counter()
    for i in range(args.trials):
        D = generate(_gen_spec(args, i))
        d = average_out_degree(D)
        roots = range(D.n) if args.all_roots else [0]
        for r in roots:
            F, _ = final_out_branching(D, r)
            cycle_lengths.append(cycle_from_final(D, F)[0].length)
            path_lengths.append(path_from_final(D, F)[0].length)
    elapsed = time.perf_counter() - started
    payload = {
        "family": args.family,
        "n": args.n,
        "trials": args.trials,
        "runs": len(cycle_lengths),
        "d": format_rational(d),
        "bound": bound_value(d),
        "min_cycle": min(cycle_lengths),
        "median_cycle": statistics.median(cycle_lengths),
        "max_cycle": max(cycle_lengths),
        "min_path": min(path_lengths),
        "median_path": statistics.median(path_lengths),
        "all_certified": all(satisfies_bound(t, d) for t in cycle_lengths + path_lengths),
        "seconds": round(elapsed, 3),
    }
    _emit(payload, args.json, out)
    return RunReport("bench", args.family, payload, EXIT_OK if payload["all_certified"] else EXIT_VIOLATION)


COMMANDS = {
    "check": _cmd_check,
    "cycle": _cmd_cycle,
    "path": _cmd_path,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "oracle": _cmd_oracle,
    "sweep": _cmd_sweep,
    "bench": _cmd_bench,
}


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> RunReport:
    out = out or sys.stdout
    err = err or sys.stderr
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        return COMMANDS[command](args, out)
    except (InputError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return RunReport(command or "usage", outcome={"error": str(exc)}, exit_code=EXIT_INPUT)
    except GuaranteeViolation as exc:
        err.write(f"guarantee violated: {type(exc).__name__}: {exc}\n")
        return RunReport(command, outcome={"error": str(exc)}, exit_code=EXIT_VIOLATION)


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv).exit_code)


if __name__ == "__main__":
    main()
