"""Command-line surface: pmax, groverian, grover, verify, and sweep.

Every run prints one JSON document (the run report) with floats at 17
significant digits; identical command lines with identical seeds produce
byte-identical results records (the wall-clock ``duration_s`` field is the
only exception).  Exit codes: 0 success, 1 verification failure, 2 usage or
input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    GroverianError,
    TooLarge,
    ZeroContraction,
)
from .families import expand_density_family, expand_state_family, ghz, w_state
from .fileio import FileFormatError, canonical_json, load_density, load_state
from .grover import (
    OracleSpec,
    iteration_bound,
    optimal_iterations,
    pmax_simulated,
    run_grover,
)
from .measures import groverian, groverian_mixed
from .product_opt import OptimizerConfig, pmax_overlap
from .statevector import DensityMatrix, StateVector, SystemShape, random_state, uniform_state
from .verify import run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def resolve_state(spec: str) -> StateVector:
    """A state spec is a named family first, a state file path second."""
    state = expand_state_family(spec)
    if state is not None:
        return state
    if Path(spec).exists():
        return load_state(spec)
    raise FileFormatError(f"{spec!r} is neither a known state family nor a file")


def resolve_density(spec: str) -> DensityMatrix:
    rho = expand_density_family(spec)
    if rho is not None:
        return rho
    if Path(spec).exists():
        return load_density(spec)
    raise FileFormatError(f"{spec!r} is neither a known density family nor a file")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=7, help="base seed (default 7)")
    parser.add_argument("--restarts", type=int, default=20)
    parser.add_argument("--tol", type=float, default=1e-12)
    parser.add_argument("--max-sweeps", type=int, default=1000)
    parser.add_argument("--output", choices=("json", "csv"), default="json")
    parser.add_argument("--out", metavar="FILE", help="write the report here")


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(
        restarts=args.restarts,
        tol=args.tol,
        max_sweeps=args.max_sweeps,
        seed=args.seed,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groverian",
        description="Search-success simulation and the product-overlap "
        "entanglement measure for multi-qudit registers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmax", help="maximal squared product overlap of a state")
    p.add_argument("--state", required=True, help="family spec or state file")
    _add_common(p)

    p = sub.add_parser("groverian", help="entanglement measure of a state")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--state", help="family spec or state file")
    group.add_argument("--mixed", help="density family spec or density file")
    _add_common(p)

    p = sub.add_parser("grover", help="run search iterations and report P(k)")
    p.add_argument("--state", required=True, help="initial state (family or file)")
    marked = p.add_mutually_exclusive_group(required=True)
    marked.add_argument("--marked", help="comma-separated marked basis indices")
    marked.add_argument(
        "--marked-count", type=int, help="mark the first r basis states"
    )
    p.add_argument(
        "--iterations", default="auto", help="iteration count, or 'auto' (default)"
    )
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite", choices=("all", "grover", "pmax", "measures"), default="all"
    )
    _add_common(p)

    p = sub.add_parser("sweep", help="tabulate a measure over a family range")
    p.add_argument(
        "--measure",
        choices=("pmax", "groverian", "grover-success", "pmax-gap"),
        required=True,
    )
    p.add_argument(
        "--family",
        choices=("ghz", "w", "uniform", "random"),
        default=None,
        help="state family swept over the site range",
    )
    p.add_argument(
        "--sites",
        default="2:6",
        help="inclusive qubit-count range lo:hi (default 2:6)",
    )
    _add_common(p)
    return parser


def _emit(report: dict, args, extra_lines: list[str] | None = None) -> None:
    lines = list(extra_lines or [])
    if args.output == "csv":
        text = _to_csv(report["results"])
    else:
        text = canonical_json(report)
    if args.out:
        Path(args.out).write_text(
            ("\n".join(lines) + "\n" if lines else "") + text + "\n", encoding="utf-8"
        )
    else:
        for line in lines:
            print(line)
        print(text)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    return canonical_json(value)


def _to_csv(results: dict) -> str:
    rows = results.get("rows")
    if rows is not None:
        header = results["columns"]
        out = [",".join(header)]
        for row in rows:
            out.append(",".join(_csv_cell(v) for v in row))
        return "\n".join(out)
    out = ["key,value"]
    for key, value in results.items():
        if value is None or isinstance(value, (int, float, str, bool)):
            out.append(f"{key},{_csv_cell(value)}")
    return "\n".join(out)


def _report_skeleton(args, argv: list[str]) -> dict:
    return {
        "command": "groverian " + " ".join(argv),
        "version": __version__,
        "seed": args.seed,
        "config": {
            "restarts": args.restarts,
            "tol": args.tol,
            "max_sweeps": args.max_sweeps,
            "output": args.output,
        },
        "results": {},
    }


def _factor_pairs(product) -> list:
    return [
        [[z.real, z.imag] for z in factor] for factor in product.factors
    ]


def cmd_pmax(args, argv) -> int:
    state = resolve_state(args.state)
    result = pmax_overlap(state, _config(args))
    report = _report_skeleton(args, argv)
    report["results"] = {
        "dims": list(state.shape.dims),
        "value": result.value,
        "argmax_factors": _factor_pairs(result.argmax),
        "restarts_used": result.restarts_used,
        "sweeps": result.sweeps,
        "converged": result.converged,
        "best_per_restart": list(result.best_per_restart),
    }
    return _finish(report, args)


def cmd_groverian(args, argv) -> int:
    report = _report_skeleton(args, argv)
    if args.mixed:
        rho = resolve_density(args.mixed)
        measure = groverian_mixed(rho, _config(args))
        dims = list(rho.shape.dims)
    else:
        state = resolve_state(args.state)
        measure = groverian(state, _config(args))
        dims = list(state.shape.dims)
    report["results"] = {"dims": dims, **measure.as_record()}
    return _finish(report, args)


def cmd_grover(args, argv) -> int:
    state = resolve_state(args.state)
    shape = state.shape
    if args.marked is not None:
        try:
            marked = [int(x) for x in args.marked.split(",")]
        except ValueError:
            raise FileFormatError(f"bad --marked list {args.marked!r}")
    else:
        if args.marked_count < 1:
            raise FileFormatError("--marked-count must be >= 1")
        marked = list(range(args.marked_count))
    oracle = OracleSpec(shape, marked)
    if args.iterations == "auto":
        iterations = optimal_iterations(shape, oracle)
    else:
        try:
            iterations = int(args.iterations)
        except ValueError:
            raise FileFormatError(f"bad --iterations value {args.iterations!r}")
        if iterations < 0:
            raise FileFormatError("--iterations must be >= 0")
    run = run_grover(state, oracle, iterations)
    report = _report_skeleton(args, argv)
    report["results"] = {
        "dims": list(shape.dims),
        "marked": list(oracle.marked),
        "iterations": run.iterations,
        "iteration_bound": iteration_bound(shape.total, oracle.count),
        "final_probability": run.prob_curve[-1],
        "columns": ["k", "P"],
        "rows": [[k, p] for k, p in enumerate(run.prob_curve)],
    }
    return _finish(report, args)


def cmd_verify(args, argv) -> int:
    results = run_suite(args.suite, args.seed)
    lines = [r.line() for r in results]
    passed = all(r.passed for r in results)
    lines.append(
        f"{'PASS' if passed else 'FAIL'}  suite={args.suite} "
        f"checks={len(results)} failures={sum(not r.passed for r in results)}"
    )
    report = _report_skeleton(args, argv)
    report["results"] = {
        "suite": args.suite,
        "passed": passed,
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "observed": r.observed,
                "tolerance": r.tolerance,
                "detail": r.detail,
            }
            for r in results
        ],
    }
    _finish(report, args, extra_lines=lines)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _sweep_rows(args) -> tuple[list[str], list[list]]:
    lo, _, hi = args.sites.partition(":")
    try:
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise FileFormatError(f"bad --sites range {args.sites!r}")
    if lo < 2 or hi < lo:
        raise FileFormatError("--sites range must satisfy 2 <= lo <= hi")

    measure = args.measure
    family = args.family or {
        "grover-success": "uniform",
        "pmax-gap": "random",
        "groverian": "ghz",
        "pmax": "ghz",
    }[measure]

    def family_state(n, index):
        shape = SystemShape([2] * n)
        if family == "ghz":
            return ghz(n)
        if family == "w":
            return w_state(n)
        if family == "uniform":
            return uniform_state(shape)
        seq = np.random.SeedSequence((args.seed & ((1 << 64) - 1), 77, index))
        return random_state(shape, seq)

    rows = []
    for index, n in enumerate(range(lo, hi + 1)):
        total = 2**n
        state = family_state(n, index)
        cfg = OptimizerConfig(
            restarts=args.restarts, tol=args.tol, max_sweeps=args.max_sweeps,
            seed=args.seed + index,
        )
        if measure == "grover-success":
            shape = state.shape
            oracle = OracleSpec(shape, (0,))
            m = optimal_iterations(shape, oracle)
            value = run_grover(uniform_state(shape), oracle, m).prob_curve[-1]
            reference = 1.0 / total
            error = 1.0 - value  # must stay below 1/N
        elif measure == "pmax":
            value = pmax_overlap(state, cfg).value
            reference = _pmax_reference(family, n)
            error = None if reference is None else abs(value - reference)
        elif measure == "groverian":
            value = groverian(state, cfg).groverian
            p_ref = _pmax_reference(family, n)
            reference = None if p_ref is None else math.sqrt(1.0 - p_ref)
            error = None if reference is None else abs(value - reference)
        else:  # pmax-gap
            value = abs(pmax_simulated(state, cfg) - pmax_overlap(state, cfg).value)
            reference = 5.0 / math.sqrt(total)
            error = value - reference  # negative when within the bound
        rows.append([total, value, reference, error])
    return ["N", "value", "reference", "error"], rows


def _pmax_reference(family: str, n: int) -> float | None:
    """Closed-form product-overlap maxima where the family has one."""
    if family == "ghz":
        return 0.5
    if family == "w":
        return (1.0 - 1.0 / n) ** (n - 1)  # symmetric stationary point
    if family == "uniform":
        return 1.0
    return None


def cmd_sweep(args, argv) -> int:
    columns, rows = _sweep_rows(args)
    report = _report_skeleton(args, argv)
    report["results"] = {
        "measure": args.measure,
        "family": args.family,
        "columns": columns,
        "rows": rows,
    }
    return _finish(report, args)


def _finish(report: dict, args, extra_lines: list[str] | None = None) -> int:
    # Wall clock sits outside the determinism surface; tests drop this key.
    report["duration_s"] = time.perf_counter() - args.start_time
    _emit(report, args, extra_lines)
    return EXIT_OK


COMMANDS = {
    "pmax": cmd_pmax,
    "groverian": cmd_groverian,
    "grover": cmd_grover,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    args.start_time = time.perf_counter()
    try:
        return COMMANDS[args.command](args, argv)
    except (ZeroContraction, TooLarge) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GroverianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
