"""Command-line interface: solve, validate, generate, compare.

Exit codes: 0 ok, 1 unreadable input or bad parameters, 2 instance outside the
solver's supported class, 3 infeasible schedule (``validate`` only).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import dp, fast, greedy, oracle, reductions, weighted
from .generators import RandomFamily, random_instance
from .model import (
    EASError,
    InputError,
    Instance,
    PreconditionError,
    SolveResult,
    parse_instance,
    parse_schedule,
    schedule_to_dict,
    serialize_instance,
    validate_schedule,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INFEASIBLE = 0, 1, 2, 3

ALGOS = ("dp", "fast", "greedy", "exact-w", "fptas", "oracle")
WEIGHTED_ALGOS = {"exact-w", "fptas"}
CSV_COLUMNS = ("instance", "algo", "objective", "oracle", "ratio", "runtime_ms", "ratio_decimal", "error")


def run_algo(algo: str, instance: Instance, epsilon=None, weighted_oracle: bool = False) -> SolveResult:
    if algo == "dp":
        return dp.solve_count(instance)
    if algo == "fast":
        return fast.solve_slots(instance)
    if algo == "greedy":
        return greedy.solve_greedy(instance)
    if algo == "exact-w":
        return weighted.solve_exact_weighted(instance)
    if algo == "fptas":
        if epsilon is None:
            raise PreconditionError("bad-epsilon", "--epsilon is required for fptas")
        return weighted.solve_fptas(instance, epsilon)
    if algo == "oracle":
        return oracle.solve_oracle(instance, weighted=weighted_oracle)
    raise InputError("bad-algo", f"unknown algorithm {algo!r}")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError("unreadable", f"{path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError("malformed", f"{path}: {exc}") from None


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    instance = parse_instance(_read_text(args.input))
    epsilon = weighted.parse_epsilon(args.epsilon) if args.epsilon is not None else None
    start = time.perf_counter()
    result = run_algo(args.algo, instance, epsilon, weighted_oracle=args.weighted)
    elapsed = (time.perf_counter() - start) * 1000
    _emit(
        {
            "objective": result.objective,
            "schedule": schedule_to_dict(result.schedule),
            "algo": result.algo,
            "runtime_ms": round(elapsed, 3),
        }
    )
    return EXIT_OK


def cmd_validate(args) -> int:
    instance = parse_instance(_read_text(args.input))
    schedule = parse_schedule(_read_text(args.schedule))
    report = validate_schedule(instance, schedule)
    _emit(report.to_dict())
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_generate(args) -> int:
    if args.random is not None:
        n, T, emax, hmax, seed = args.random
        family = RandomFamily(
            n,
            T,
            emax,
            hmax,
            emin=args.emin,
            wmin=args.wmin,
            wmax=args.wmax,
            common_window=args.common_window,
            full_window=args.full_window,
        )
        text = serialize_instance(random_instance(family, seed))
        meta = None
    else:
        data = _read_json(args.json)
        if not isinstance(data, dict):
            raise InputError("malformed", "source JSON must be an object")
        try:
            if args.source == "knapsack":
                source = reductions.KnapsackInput(
                    tuple(map(tuple, data["items"])), data["capacity"], data.get("threshold", 0)
                )
                name = reductions.KNAPSACK
            else:
                source = reductions.KSumInput(
                    tuple(data["values"]), data.get("beta", data.get("target")), data["k"]
                )
                name = reductions.ARB_DUE if args.reduction == "arb-due" else reductions.ARB_RELEASE
        except (KeyError, TypeError) as exc:
            raise InputError("malformed", f"bad {args.source} input: {exc}") from None
        instance, meta = reductions.generate(source, name, args.max_int_bits)
        text = serialize_instance(instance)

    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if meta is not None:
        meta_path = args.meta or (str(Path(args.out).with_suffix("")) + ".meta.json" if args.out else None)
        if meta_path:
            _emit(meta, meta_path)
        else:
            sys.stderr.write(json.dumps(meta) + "\n")
    return EXIT_OK


class ResultSink:
    """Append-only row store shared by compare workers."""

    def __init__(self):
        self._rows: list[dict] = []
        self._lock = threading.Lock()

    def add(self, row: dict) -> None:
        with self._lock:
            self._rows.append(row)

    def rows(self) -> list[dict]:
        with self._lock:
            return list(self._rows)


def _ratio(objective, best) -> tuple[str, str]:
    if objective is None or best is None:
        return "", ""
    if best == 0:
        return ("1/1", "1.000000") if objective == 0 else ("", "")
    frac = Fraction(objective, best)
    return f"{frac.numerator}/{frac.denominator}", f"{float(frac):.6f}"


def compare_instance(path: Path, algos, epsilon, sink: ResultSink) -> None:
    name = path.name
    try:
        instance = parse_instance(path.read_text(encoding="utf-8"))
    except (EASError, OSError) as exc:
        for algo in algos:
            sink.add({"instance": name, "algo": algo, "error": str(exc)})
        return
    optimum: dict[bool, int | None] = {}
    for flag in (False, True):
        try:
            optimum[flag] = oracle.solve_oracle(instance, weighted=flag).objective
        except EASError:
            optimum[flag] = None
    for algo in algos:
        row = {"instance": name, "algo": algo}
        is_weighted = algo in WEIGHTED_ALGOS
        row["oracle"] = optimum[is_weighted]
        try:
            start = time.perf_counter()
            result = run_algo(algo, instance, epsilon)
            row["runtime_ms"] = f"{(time.perf_counter() - start) * 1000:.3f}"
            row["objective"] = result.objective
            row["ratio"], row["ratio_decimal"] = _ratio(result.objective, row["oracle"])
        except EASError as exc:
            row["error"] = str(exc)
        sink.add(row)


def cmd_compare(args) -> int:
    algos = [a for chunk in args.algos for a in chunk.split(",") if a]
    for algo in algos:
        if algo not in ALGOS:
            raise InputError("bad-algo", f"unknown algorithm {algo!r}")
    epsilon = weighted.parse_epsilon(args.epsilon) if args.epsilon is not None else None
    folder = Path(args.input_dir)
    if not folder.is_dir():
        raise InputError("unreadable", f"{folder} is not a directory")
    files = sorted(p for p in folder.glob("*.json") if not p.name.endswith(".meta.json"))
    if "fast" in algos and files:
        fast.warm_up()  # keep JIT compilation out of the timings
    sink = ResultSink()
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        for future in [pool.submit(compare_instance, p, algos, epsilon, sink) for p in files]:
            future.result()
    order = {a: i for i, a in enumerate(algos)}
    rows = sorted(sink.rows(), key=lambda r: (r["instance"], order[r["algo"]]))

    if args.out and args.out.endswith(".json"):
        _emit(rows, args.out)
    else:
        handle = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
        try:
            writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS, restval="")
            writer.writeheader()
            writer.writerows(rows)
        finally:
            if handle is not sys.stdout:
                handle.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="energysched", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one solver on an instance file")
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", help="FPTAS accuracy as p/q, e.g. 1/4")
    p.add_argument("--weighted", action="store_true", help="oracle maximizes weight instead of count")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a schedule against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--schedule", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="write a random or reduction instance")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--random", nargs=5, type=int, metavar=("N", "T", "EMAX", "HMAX", "SEED"))
    src.add_argument("--from", dest="source", choices=("ksum", "knapsack"))
    p.add_argument("--json", help="k-SUM or knapsack input for --from")
    p.add_argument("--reduction", choices=("arb-release", "arb-due"), default="arb-release")
    p.add_argument("--max-int-bits", type=int, default=None)
    p.add_argument("--common-window", action="store_true")
    p.add_argument("--full-window", action="store_true")
    p.add_argument("--emin", type=int, default=1)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--meta", help="sidecar metadata path for --from")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compare", help="run several solvers over a folder of instances")
    p.add_argument("--input-dir", required=True)
    p.add_argument("--algos", nargs="+", default=["dp", "fast", "greedy"])
    p.add_argument("--epsilon", default=None)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--out", help="CSV (default) or .json path; stdout if omitted")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "generate" and args.source and not args.json:
        print("error: --from needs --json", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
