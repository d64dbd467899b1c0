"""Command-line front end.

Exit codes: 0 success, 1 infeasible or failed verification, 2 unreadable
input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .bench import ALGOS, bench_dir
from .dimacs import ParseError, parse_instance, parse_solution, serialize_instance, serialize_solution
from .generators import KINDS, InstanceSpec, generate
from .graph import CapacityError, InvariantError
from .oracles import find_negative_cycle, residual_arcs
from .planar.embedding import NonPlanarError
from .scaling import (
    InfeasibleError,
    SolverConfig,
    certify_report,
    certify_st_flow,
    min_cost_circulation,
    min_cost_st_flow,
)

EXIT_OK, EXIT_INFEASIBLE, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _config(args, rotation) -> tuple[SolverConfig, list[dict]]:
    engine = ALGOS[args.algo][0]
    trace = []
    cfg = SolverConfig(engine=engine, r=args.r, rotation=rotation, certify_each_scale=args.certify)
    if args.trace:
        cfg.on_phase = lambda k, ph: trace.append({"scale": k, **ph.as_dict()})
    return cfg, trace


def _emit(args, out, sol, report: dict) -> None:
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write(serialize_solution(sol.cost, sol.flow, sol.prices, sol.unit, sol.eps))


def _finish_trace(args, trace) -> None:
    if args.trace:
        with open(args.trace, "w") as fh:
            for row in trace:
                fh.write(json.dumps(row, sort_keys=True) + "\n")


def cmd_solve(args, out) -> int:
    inst = parse_instance(_read(args.instance))
    g = inst.graph
    cfg, trace = _config(args, inst.rotation)
    t0 = time.perf_counter()
    sol = min_cost_circulation(g, cfg)
    wall = time.perf_counter() - t0
    _finish_trace(args, trace)
    report = {"cost": sol.cost, "algorithm": ALGOS[args.algo][1], "scales": len(sol.scales),
              "phases": sol.phases, "path_edges": sol.path_edges, "flow": sol.flow}
    if args.certify:
        bad = certify_report(g, sol.flow, sol.prices, sol.eps, sol.unit)
        if bad:
            # never print an optimum that does not certify
            for line in bad:
                print(f"certificate failed: {line}", file=sys.stderr)
            return EXIT_INTERNAL
        report["certified"] = True
    if args.timing:
        report["wall_time"] = round(wall, 6)
        print(f"solved in {wall:.3f}s", file=sys.stderr)
    _emit(args, out, sol, report)
    return EXIT_OK


def cmd_flow(args, out) -> int:
    inst = parse_instance(_read(args.instance))
    g = inst.graph
    for name, v in (("source", args.source), ("sink", args.sink)):
        if not 1 <= v <= g.n:
            raise ParseError(0, f"{name} {v} out of range 1..{g.n}")
    cfg, trace = _config(args, inst.rotation)
    t0 = time.perf_counter()
    try:
        sol = min_cost_st_flow(g, args.source - 1, args.sink - 1, args.value, cfg)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    wall = time.perf_counter() - t0
    _finish_trace(args, trace)
    report = {"cost": sol.cost, "value": args.value, "flow": sol.flow}
    if args.certify:
        bad = certify_st_flow(g, args.source - 1, args.sink - 1, args.value, sol)
        if bad:
            for line in bad:
                print(f"certificate failed: {line}", file=sys.stderr)
            return EXIT_INTERNAL
        report["certified"] = True
    if args.timing:
        report["wall_time"] = round(wall, 6)
    _emit(args, out, sol, report)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    spec = InstanceSpec(args.kind, n=args.n, m=args.m, rows=args.rows, cols=args.cols,
                        cost=args.cost, multiplicity=args.multiplicity, seed=args.seed)
    try:
        inst = generate(spec)
    except ValueError as exc:
        print(f"bad generator parameters: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = serialize_instance(inst.graph, inst.rotation, [spec.label()])
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    """Check a solution: 0/1 flow, conservation, optimality and the stated cost."""
    inst = parse_instance(_read(args.instance))
    g = inst.graph
    sol = parse_solution(_read(args.solution), g.m, g.n)
    problems = []
    if sol.prices is not None:
        problems = certify_report(g, sol.flow, sol.prices, sol.eps, sol.unit)
    else:
        problems = certify_report(g, sol.flow, [0] * g.n, 10 ** 18)
    if not problems:
        # optimality without trusting the prices: no negative residual cycle
        if find_negative_cycle(g.n, residual_arcs(g, sol.flow)) is not None:
            problems.append("residual graph has a negative cycle, the flow is not optimal")
    cost = sum(c for (_, _, c), x in zip(g.arcs(), sol.flow) if x)
    if sol.cost is not None and sol.cost != cost:
        problems.append(f"stated cost {sol.cost} differs from the flow cost {cost}")
    for line in problems:
        out.write(f"violated: {line}\n")
    if problems:
        return EXIT_INFEASIBLE
    out.write(f"ok cost {cost}\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    algos = args.algo or ["dial"]
    for rep in bench_dir(args.directory, algos, r=args.r, timing=args.timing):
        out.write(rep.to_json() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unitflow", description="unit-capacity min-cost circulations")
    sub = ap.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("instance", help="instance file, '-' for stdin")
        p.add_argument("--algo", choices=sorted(ALGOS), default="dial")
        p.add_argument("--r", type=int, default=None, help="piece size for --algo planar")
        p.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
        p.add_argument("--certify", action="store_true", help="certify every scale and the result")
        p.add_argument("--trace", metavar="FILE", help="write per-phase statistics as JSON lines")
        p.add_argument("--timing", action="store_true", help="report wall-clock time")

    p = sub.add_parser("solve", help="minimum-cost circulation")
    solver_flags(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("flow", help="minimum-cost s,t-flow of a given value")
    solver_flags(p)
    p.add_argument("--source", type=int, required=True, help="1-based source vertex")
    p.add_argument("--sink", type=int, required=True, help="1-based sink vertex")
    p.add_argument("--value", type=int, required=True)
    p.set_defaults(fn=cmd_flow)

    p = sub.add_parser("gen", help="write a seeded instance")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--rows", type=int, default=0)
    p.add_argument("--cols", type=int, default=0)
    p.add_argument("--cost", type=int, default=10)
    p.add_argument("--multiplicity", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="solve every *.mcf file in a directory")
    p.add_argument("directory")
    p.add_argument("--algo", action="append", choices=sorted(ALGOS))
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="include wall times (output is then not reproducible)")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except (ParseError, NonPlanarError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
