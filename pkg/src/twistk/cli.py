"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .diffforms import twist_form
from .fusion import FusionError, FusionRing, build_fusion_ring
from .koszul import exactness_report
from .poly_core import render
from .verlinde_oracle import (
    DEFAULT_CONDITION_BOUND,
    DEFAULT_TOLERANCE,
    OracleError,
    ideal_vanishing_check,
    oracle_fusion,
)

log = logging.getLogger("twistk")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ORDER = "grevlex"


def _weight_text(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines(payload)) + "\n")


# ---------------------------------------------------------------- cache

def cache_path(cache_dir: str | Path, N: int, k: int) -> Path:
    return Path(cache_dir) / f"fusion_N{N}_k{k}_{ORDER}.json"


def load_or_build(N: int, k: int, cache_dir: str | None) -> FusionRing:
    if cache_dir:
        path = cache_path(cache_dir, N, k)
        if path.exists():
            log.info("cache hit: %s", path)
            return FusionRing.from_dict(json.loads(path.read_text()))
    ring = build_fusion_ring(N, k)
    if cache_dir:
        path = cache_path(cache_dir, N, k)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(ring.to_dict("schur"), indent=2) + "\n")
    return ring


# ---------------------------------------------------------------- commands

def cmd_twistform(args) -> int:
    tf = twist_form(args.N, args.k)
    payload = {
        "N": tf.N,
        "k": tf.k,
        "m": tf.m,
        "x_form": str(tf.x_form),
        "e_coeffs": [render(a) for a in tf.e_coeffs],
        "r_coeffs": [render(a) for a in tf.r_coeffs],
    }

    def text(p):
        yield f"SU({p['N']}) level {p['k']}: alpha = {p['x_form']}"
        for j, a in enumerate(p["e_coeffs"], 1):
            yield f"  a{j} = {a}"
        for j, a in enumerate(p["r_coeffs"], 1):
            yield f"  abar{j} = {a}"

    _emit(payload, args.format, text)
    return EXIT_OK


def cmd_exactness(args) -> int:
    report = exactness_report(args.N, args.n, args.max_degree)
    payload = report.to_dict()

    def text(p):
        yield f"N={p['N']} n={p['n']} max degree {p['max_degree']}: {'PASS' if p['pass'] else 'FAIL'}"
        yield f"  top ranks: {p['top_ranks']}"
        for s in p["slices"]:
            if not s["pass"]:
                yield f"  failing slice p={s['p']} d={s['d']}: rank {s['homology_rank']} torsion {s['torsion']}"

    _emit(payload, args.format, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_fusion(args) -> int:
    try:
        ring = load_or_build(args.N, args.k, args.cache_dir)
    except FusionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = ring.to_dict(args.basis)

    def text(p):
        yield f"SU({p['N']}) level {p['k']}: rank {p['rank']}"
        yield "  Groebner basis: " + ", ".join(p["groebner_basis"])
        for e in p["table"]:
            if args.basis == "schur":
                terms = " + ".join(
                    (f"{r['coeff']}*" if r["coeff"] != 1 else "") + _weight_text(r["weight"]) for r in e["result"]
                )
                yield f"  {_weight_text(e['lhs'])} x {_weight_text(e['rhs'])} = {terms or '0'}"
            else:
                terms = " + ".join(
                    (f"{r['coeff']}*" if r["coeff"] != 1 else "") + r["monomial"] for r in e["result"]
                )
                yield f"  {e['lhs']} * {e['rhs']} = {terms or '0'}"

    _emit(payload, args.format, text)
    return EXIT_OK


def cmd_verlinde(args) -> int:
    try:
        table = oracle_fusion(args.N, args.k, args.tolerance, args.condition_bound)
    except OracleError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = table.to_dict()

    def text(p):
        yield f"SU({p['N']}) level {p['k']} (Verlinde points): rank {p['rank']}"
        yield f"  max residual {p['max_residual']:.3g}, condition {p['condition_estimate']:.3g}"
        for e in p["table"]:
            terms = " + ".join(
                (f"{r['coeff']}*" if r["coeff"] != 1 else "") + _weight_text(r["weight"]) for r in e["result"]
            )
            yield f"  {_weight_text(e['lhs'])} x {_weight_text(e['rhs'])} = {terms or '0'}"

    _emit(payload, args.format, text)
    return EXIT_OK


def compare(N: int, k: int, tolerance: float, condition_bound: float, cache_dir=None) -> dict:
    """Quotient-ring table against the Verlinde-point table."""
    ring = load_or_build(N, k, cache_dir)
    problems = []
    try:
        oracle = oracle_fusion(N, k, tolerance=float("inf"), condition_bound=condition_bound)
    except OracleError as exc:
        return {"N": N, "k": k, "pass": False, "problems": [str(exc)]}
    mismatches = []
    for lam in ring.weights:
        for mu in ring.weights:
            a, b = ring.table[(lam, mu)], oracle.table[(lam, mu)]
            if a != b:
                mismatches.append({"lhs": list(lam), "rhs": list(mu)})
    if list(ring.weights) != list(oracle.weights):
        problems.append("weight lists differ")
    if mismatches:
        problems.append(f"{len(mismatches)} table entries differ")
    if not oracle.max_residual < tolerance:
        problems.append(f"oracle residual {oracle.max_residual:.3g} is not below {tolerance:.3g}")
    vanishing = ideal_vanishing_check(N, k, tolerance)
    if not vanishing["pass"]:
        problems.append(f"ideal generators reach {vanishing['max_modulus']:.3g} at Verlinde points")
    return {
        "N": N,
        "k": k,
        "rank": ring.rank,
        "tables_identical": not mismatches,
        "mismatches": mismatches,
        "max_residual": oracle.max_residual,
        "condition_estimate": oracle.condition_estimate,
        "ideal_max_modulus": vanishing["max_modulus"],
        "tolerance": tolerance,
        "pass": not problems,
        "problems": problems,
    }


def cmd_check(args) -> int:
    try:
        payload = compare(args.N, args.k, args.tolerance, args.condition_bound, args.cache_dir)
    except FusionError as exc:
        payload = {"N": args.N, "k": args.k, "pass": False, "problems": [str(exc)]}

    def text(p):
        yield f"SU({p['N']}) level {p['k']}: {'PASS' if p['pass'] else 'FAIL'}"
        if "max_residual" in p:
            yield f"  tables identical: {p['tables_identical']}"
            yield f"  oracle residual {p['max_residual']:.3g}, ideal max modulus {p['ideal_max_modulus']:.3g}"
        for problem in p["problems"]:
            yield f"  problem: {problem}"

    _emit(payload, args.format, text)
    return EXIT_OK if payload["pass"] else EXIT_FAIL


# ---------------------------------------------------------------- parser

def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--cache-dir", default=None, help="directory for cached fusion rings")
    common.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE)
    common.add_argument("--condition-bound", type=_positive_float, default=DEFAULT_CONDITION_BOUND)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="twistk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("twistform", parents=[common], help="coefficients of the level-k twist")
    p.add_argument("N", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_twistform)

    p = sub.add_parser("exactness", parents=[common], help="slice homology of sum x_i^n dx_i")
    p.add_argument("N", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(func=cmd_exactness)

    p = sub.add_parser("fusion", parents=[common], help="fusion ring from the Groebner quotient")
    p.add_argument("N", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--basis", choices=("schur", "monomial"), default="schur")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("verlinde", parents=[common], help="fusion table from Verlinde points")
    p.add_argument("N", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_verlinde)

    p = sub.add_parser("check", parents=[common], help="compare the quotient ring with the Verlinde oracle")
    p.add_argument("N", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_check)
    return parser


def _validate(parser, args) -> None:
    if args.N < 2:
        parser.error(f"N must be at least 2, got {args.N}")
    if getattr(args, "k", 0) < 0:
        parser.error(f"k must be nonnegative, got {args.k}")
    if args.command == "exactness":
        if args.n < 1:
            parser.error(f"n must be at least 1, got {args.n}")
        if args.max_degree < 0:
            parser.error(f"--max-degree must be nonnegative, got {args.max_degree}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except Exception as exc:  # any escape here is an internal failure, reported as exit 1
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
