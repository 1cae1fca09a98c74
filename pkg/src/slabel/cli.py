"""Command-line front end: instance generation, solving, bounding,
labeling checks, and CSV benchmarking.

Exit codes: 0 success, 2 usage or input error, 3 size refusal, 4 invalid
labeling.  JSON output is the stable machine interface; node ids and
labels are 1-indexed everywhere the tool reads or writes.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

from .core import Graph, sl_value
from .dual_ascent import dual_ascent_extended, dual_ascent_simple
from .exact import SizeLimitError, branch_and_bound, brute_force
from .heuristics import starting_heuristic
from .instances import (
    InstanceFormatError,
    InstanceSpec,
    KINDS,
    read_instance,
    read_labeling,
    write_instance,
    write_labeling,
)
from .lagrangian import SubgradientParams, run_subgradient
from .special_graphs import (
    StructureKind,
    detect_structure,
    label_perfect_nary,
    solve_cycle,
    solve_path,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SIZE = 3
EXIT_INVALID_LABELING = 4

_GEN_PARAMS = {
    "path": ("nodes",),
    "cycle": ("nodes",),
    "grid": ("rows", "cols"),
    "nary": ("arity", "depth"),
    "gnm": ("nodes", "edges", "seed"),
    "tree": ("nodes", "seed"),
    "caterpillar": ("backbone", "p1", "seed"),
    "lobster": ("backbone", "p1", "p2", "seed"),
    "bipartite": ("n1", "n2", "prob", "seed"),
}

BENCH_METHODS = ("greedy", "dual-simple", "dual-extended", "lagrangian", "bnb")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slabel",
        description="Generate, solve, bound, check and benchmark instances "
        "of the minimum S-labeling problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--kind", required=True, choices=KINDS)
    gen.add_argument("--nodes", type=int)
    gen.add_argument("--edges", type=int)
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--arity", type=int)
    gen.add_argument("--depth", type=int)
    gen.add_argument("--backbone", type=int)
    gen.add_argument("--p1", type=float)
    gen.add_argument("--p2", type=float)
    gen.add_argument("--n1", type=int)
    gen.add_argument("--n2", type=int)
    gen.add_argument("--prob", type=float)
    gen.add_argument("--seed", type=int)
    gen.add_argument("-o", "--output", required=True)

    solve = sub.add_parser("solve", help="solve an instance")
    solve.add_argument("instance")
    solve.add_argument(
        "--method",
        default="auto",
        choices=("auto", "greedy", "lagrangian", "bnb", "special", "oracle"),
    )
    solve.add_argument("--time-limit", type=float, default=60.0)
    solve.add_argument("--json", action="store_true")
    solve.add_argument("--labeling-out", help="write the labeling to this file")

    bound = sub.add_parser("bound", help="compute a lower bound")
    bound.add_argument("instance")
    bound.add_argument(
        "--method",
        default="dual-extended",
        choices=("dual-simple", "dual-extended", "lagrangian"),
    )
    bound.add_argument("--json", action="store_true")

    check = sub.add_parser("check", help="validate a labeling file")
    check.add_argument("instance")
    check.add_argument("labeling")

    bench = sub.add_parser("bench", help="run a suite and emit CSV")
    bench.add_argument("--suite", required=True)
    bench.add_argument("--out", required=True)
    bench.add_argument("--time-limit", type=float, default=60.0)
    bench.add_argument(
        "--methods",
        default=",".join(BENCH_METHODS),
        help="comma-separated subset of: " + ", ".join(BENCH_METHODS),
    )
    return parser


def _gen_params(args: argparse.Namespace, parser: argparse.ArgumentParser) -> InstanceSpec:
    wanted = _GEN_PARAMS[args.kind]
    given = {
        name: getattr(args, name)
        for name in ("nodes", "edges", "rows", "cols", "arity", "depth",
                     "backbone", "p1", "p2", "n1", "n2", "prob", "seed")
        if getattr(args, name) is not None
    }
    for name in wanted:
        if name not in given and name != "seed":
            parser.error(f"--kind {args.kind} requires --{name}")
    for name in given:
        if name not in wanted:
            parser.error(f"--{name} does not apply to --kind {args.kind}")
    seed = given.pop("seed", 0)
    rename = {"nodes": "n", "edges": "m", "prob": "p"}
    params = {rename.get(k, k): v for k, v in given.items()}
    return InstanceSpec(kind=args.kind, params=params, seed=seed)


def _load_instance(path: str) -> Graph:
    text = Path(path).read_text(encoding="ascii")
    return read_instance(text)


def _gap_percent(lb: int | None, ub: int | None) -> float | None:
    if lb is None or ub is None:
        return None
    if ub == lb:
        return 0.0
    return 100.0 * (ub - lb) / ub


def _emit_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    for key in (
        "instance",
        "nodes",
        "edges",
        "method",
        "primal_value",
        "dual_bound",
        "gap_percent",
        "proven",
        "time_ms",
    ):
        if key in report:
            print(f"{key}: {report[key]}")


def _cmd_gen(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    spec = _gen_params(args, parser)
    try:
        g = spec.generate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    Path(args.output).write_text(write_instance(g), encoding="ascii")
    print(f"{g.n} nodes, {g.m} edges -> {args.output}")
    return EXIT_OK


def _solve_special(g: Graph) -> tuple[str, object] | None:
    structure = detect_structure(g)
    if structure.kind is StructureKind.PATH:
        return "special:path", solve_path(g)
    if structure.kind is StructureKind.CYCLE:
        return "special:cycle", solve_cycle(g)
    if structure.kind is StructureKind.PERFECT_NARY:
        return "special:nary", label_perfect_nary(g, structure)
    return None


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        g = _load_instance(args.instance)
    except (OSError, InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    started = time.perf_counter()
    labeling = None
    dual_bound = None
    proven = False
    method = args.method

    if method in ("auto", "special"):
        special = _solve_special(g)
        if special is not None:
            method, labeling = special
            value = sl_value(g, labeling)
            dual_bound = value
            proven = True
        elif args.method == "special":
            print("error: instance is not a path, cycle or perfect n-ary tree",
                  file=sys.stderr)
            return EXIT_USAGE
        else:
            method = "bnb"

    if labeling is None:
        if method == "greedy":
            labeling, value = starting_heuristic(g, 0)
        elif method == "lagrangian":
            result = run_subgradient(g, SubgradientParams())
            labeling = result.best_labeling
            value = result.incumbent_value
            dual_bound = result.lower_bound
            proven = result.lower_bound == result.incumbent_value
        elif method == "bnb":
            res = branch_and_bound(g, time_limit=args.time_limit)
            labeling = res.labeling
            value = res.upper_bound
            dual_bound = res.lower_bound
            proven = res.stats.proven_optimal
        elif method == "oracle":
            try:
                value, labeling = brute_force(g)
            except SizeLimitError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_SIZE
            dual_bound = value
            proven = True
        else:  # pragma: no cover - argparse restricts choices
            raise AssertionError(method)

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    report = {
        "instance": Path(args.instance).stem,
        "nodes": g.n,
        "edges": g.m,
        "method": method,
        "primal_value": value,
        "dual_bound": dual_bound,
        "gap_percent": _gap_percent(dual_bound, value),
        "proven": proven,
        "time_ms": round(elapsed_ms, 3),
        "labeling": list(labeling.labels),
    }
    if args.labeling_out:
        Path(args.labeling_out).write_text(write_labeling(labeling), encoding="ascii")
    _emit_report(report, args.json)
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace) -> int:
    try:
        g = _load_instance(args.instance)
    except (OSError, InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    started = time.perf_counter()
    details: dict = {}
    if args.method == "dual-simple":
        _, bound = dual_ascent_simple(g)
    elif args.method == "dual-extended":
        _, bound, trace = dual_ascent_extended(g)
        details["net_changes"] = [step.net_change for step in trace]
        details["alpha_values"] = [step.alpha_value for step in trace]
    else:
        result = run_subgradient(g, SubgradientParams())
        bound = result.lower_bound
        details["iterations"] = result.iterations
        details["incumbent"] = result.incumbent_value
        details["stop_reason"] = result.stop_reason
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    report = {
        "instance": Path(args.instance).stem,
        "nodes": g.n,
        "edges": g.m,
        "method": args.method,
        "lower_bound": bound,
        "time_ms": round(elapsed_ms, 3),
        **details,
    }
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for key, val in report.items():
            print(f"{key}: {val}")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        g = _load_instance(args.instance)
    except (OSError, InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = Path(args.labeling).read_text(encoding="ascii")
        phi = read_labeling(text, g.n)
    except (OSError, InstanceFormatError) as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID_LABELING
    print(f"valid, value {sl_value(g, phi)}")
    return EXIT_OK


def _bench_row(name: str, g: Graph, method: str, time_limit: float) -> dict:
    started = time.perf_counter()
    lb: int | None = None
    ub: int | None = None
    status = "ok"
    try:
        if method == "greedy":
            _, ub = starting_heuristic(g, 0)
        elif method == "dual-simple":
            _, lb = dual_ascent_simple(g)
        elif method == "dual-extended":
            _, lb, _ = dual_ascent_extended(g)
        elif method == "lagrangian":
            result = run_subgradient(g, SubgradientParams())
            lb, ub = result.lower_bound, result.incumbent_value
        elif method == "bnb":
            res = branch_and_bound(g, time_limit=time_limit)
            lb, ub = res.lower_bound, res.upper_bound
            if not res.stats.proven_optimal:
                status = "timeout"
        else:
            raise ValueError(f"unknown method {method}")
    except Exception:
        status = "error"
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    gap = _gap_percent(lb, ub)
    return {
        "name": name,
        "nodes": g.n,
        "edges": g.m,
        "method": method,
        "lb": "" if lb is None else lb,
        "ub": "" if ub is None else ub,
        "gap_percent": "" if gap is None else f"{gap:.4f}",
        "time_ms": round(elapsed_ms, 3),
        "status": status,
    }


def _cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    suite = Path(args.suite)
    if not suite.is_dir():
        print(f"error: {suite} is not a directory", file=sys.stderr)
        return EXIT_USAGE
    files = sorted(p for p in suite.iterdir() if p.is_file())
    if not files:
        print(f"error: no instance files in {suite}", file=sys.stderr)
        return EXIT_USAGE
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in BENCH_METHODS:
            parser.error(f"unknown bench method {m!r}")

    def run_one(path: Path) -> list[dict]:
        name = path.stem
        try:
            g = read_instance(path.read_text(encoding="ascii"))
        except (OSError, InstanceFormatError, UnicodeDecodeError):
            return [
                {
                    "name": name,
                    "nodes": "",
                    "edges": "",
                    "method": m,
                    "lb": "",
                    "ub": "",
                    "gap_percent": "",
                    "time_ms": 0,
                    "status": "error",
                }
                for m in methods
            ]
        return [_bench_row(name, g, m, args.time_limit) for m in methods]

    threads = max(1, int(os.environ.get("SLAB_THREADS", "1")))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_file = list(pool.map(run_one, files))
    else:
        per_file = [run_one(path) for path in files]

    rows = [row for rows_for_file in per_file for row in rows_for_file]
    rows.sort(key=lambda r: (r["name"], methods.index(r["method"])))
    with open(args.out, "w", newline="", encoding="ascii") as handle:
        writer = csv.DictWriter(
            handle,
            fieldnames=[
                "name", "nodes", "edges", "method", "lb", "ub",
                "gap_percent", "time_ms", "status",
            ],
            lineterminator="\n",
        )
        writer.writeheader()
        writer.writerows(rows)
    print(f"{len(rows)} rows -> {args.out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        return _cmd_gen(args, parser)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "bound":
        return _cmd_bound(args)
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "bench":
        return _cmd_bench(args, parser)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
