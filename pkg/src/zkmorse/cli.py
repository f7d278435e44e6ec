"""Command-line front end.

Every command prints one JSON report per input file (JSON Lines when there
are several), or a plain table with ``--format table``. Exit status: 0 on
success, 1 on I/O, validation or budget errors, 2 when the triangle check
disagrees on an input outside the theorem's hypothesis, 3 when it disagrees
on an input that satisfies it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .complex import (
    SimplicialComplex,
    alexander_dual,
    boundary_of_simplex,
    full_simplex,
    random_complex,
    shifted_random,
    skeleton_complex,
)
from .cw import DEFAULT_CELL_BUDGET, betti_moment_angle, enumerate_cells, wedge_formula
from .errors import BudgetExceeded, TheoremViolation
from .io import ComplexFormatError, complex_to_json, dump_complex, load_complex, report, str_keys
from .morse import (
    build_matching,
    critical_direct,
    critical_recursive,
    l_monotone,
    morse_betti,
    shedding_compatible,
    sign_vector_dim,
    theorem_hypothesis,
    verify_acyclic,
)
from .vertex_decomp import shedding_sequence, verify_shedding_sequence

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_VIOLATION = 0, 1, 2, 3


class Failure(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _threads() -> int:
    raw = os.environ.get("ZKMORSE_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise Failure(f"ZKMORSE_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise Failure(f"ZKMORSE_THREADS must be a positive integer, got {raw!r}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _prime(text: str) -> int:
    value = int(text)
    if value not in (2, 3, 5, 7):
        raise argparse.ArgumentTypeError(f"p must be one of 2, 3, 5, 7, got {text}")
    return value


# ---------------------------------------------------------------------------
# commands: each takes (K, args) and returns (report fields, exit code)


def cmd_dual(K: SimplicialComplex, args) -> tuple[dict, int]:
    return complex_to_json(alexander_dual(K)), EXIT_OK


def cmd_vd(K: SimplicialComplex, args) -> tuple[dict, int]:
    if args.action == "verify":
        if args.order is None:
            raise Failure("vd verify needs --order")
        try:
            order = [int(x) for x in args.order.split(",") if x.strip()]
            valid = verify_shedding_sequence(K, order, strict=args.strict_shedding)
        except ValueError as exc:
            raise Failure(f"invalid order: {exc}") from None
        return {"order": order, "strict": args.strict_shedding, "valid": valid}, EXIT_OK
    cert = shedding_sequence(K, budget=args.budget_nodes)
    out: dict[str, Any] = {"vertex_decomposable": cert is not None}
    if args.action == "sequence":
        out["sequence"] = list(cert.order) if cert is not None else None
    return out, EXIT_OK


def cmd_crit(K: SimplicialComplex, args) -> tuple[dict, int]:
    out: dict[str, Any] = {"n": args.n, "method": args.method}
    if args.method in ("recursive", "both"):
        crit = critical_recursive(K)
    if args.method in ("direct", "both"):
        direct = critical_direct(K, args.n, args.budget_cells)
        if args.method == "both":
            out["routes_agree"] = direct == crit
            if direct != crit:
                raise Failure("direct and recursive critical cells differ", EXIT_VIOLATION)
        crit = direct
    out["critical"] = sorted(crit)
    out["dims"] = str_keys(_dims(crit, args.n))
    return out, EXIT_OK


def _dims(crit, n: int) -> dict[int, int]:
    return dict(sorted(Counter(sign_vector_dim(c, n) for c in crit).items()))


def cmd_betti(K: SimplicialComplex, args) -> tuple[dict, int]:
    table = betti_moment_angle(K, args.n, args.p, args.budget_cells)
    return {
        "n": args.n,
        "p": args.p,
        "betti": str_keys(table.ranks),
        "cells_per_dim": str_keys(table.cells_per_dim),
        "chi": table.euler_characteristic,
    }, EXIT_OK


def cmd_wedge(K: SimplicialComplex, args) -> tuple[dict, int]:
    return {
        "n": args.n,
        "p": args.p,
        "spheres": str_keys(wedge_formula(K, args.n, args.p)),
        "hypothesis": theorem_hypothesis(K),
    }, EXIT_OK


def cmd_verify(K: SimplicialComplex, args) -> tuple[dict, int]:
    morse = morse_betti(K, args.n)
    oracle = betti_moment_angle(K, args.n, args.p, args.budget_cells).ranks
    spheres = wedge_formula(K, args.n, args.p)
    # the wedge counts spheres; add the base point to compare with unreduced ranks
    wedge = dict(spheres)
    wedge[0] = wedge.get(0, 0) + 1
    equal = morse == oracle == wedge
    hypothesis = theorem_hypothesis(K)
    triangle = {
        "morse": str_keys(morse),
        "oracle": str_keys(oracle),
        "wedge": str_keys(spheres),
        "equal": equal,
        "oracle_equals_wedge": oracle == wedge,
    }
    out = {
        "n": args.n,
        "p": args.p,
        "hypothesis_not_met": not hypothesis,
        "shedding_compatible": shedding_compatible(K),
        "triangle": triangle,
    }
    if equal:
        return out, EXIT_OK
    return out, EXIT_VIOLATION if hypothesis else EXIT_HYPOTHESIS


def cmd_matching(K: SimplicialComplex, args) -> tuple[dict, int]:
    cells = enumerate_cells(K, args.n, args.budget_cells)
    matching = build_matching(K, args.n, args.budget_cells)
    if args.dump is not None:
        edges = [{"source": list(e.source), "target": list(e.target), "coordinate": e.coordinate}
                 for e in matching.edges]
        Path(args.dump).write_text(json.dumps({"n": args.n, "edges": edges}) + "\n", encoding="utf-8")
    return {
        "n": args.n,
        "cells": len(cells),
        "matched_pairs": len(matching.edges),
        "critical": sorted(critical_direct(K, args.n, args.budget_cells)),
        "acyclic": verify_acyclic(matching, cells),
        "l_monotone": l_monotone(matching, cells),
    }, EXIT_OK


COMMANDS: dict[str, Callable[[SimplicialComplex, Any], tuple[dict, int]]] = {
    "dual": cmd_dual,
    "vd": cmd_vd,
    "crit": cmd_crit,
    "betti": cmd_betti,
    "wedge": cmd_wedge,
    "verify": cmd_verify,
    "matching": cmd_matching,
}


def cmd_gen(args) -> SimplicialComplex:
    if args.skeleton:
        m, k = args.skeleton
        return skeleton_complex(m, k)
    if args.boundary:
        return boundary_of_simplex(args.boundary)
    if args.full:
        return full_simplex(args.full)
    if args.random:
        return random_complex(args.random, seed=args.seed)
    return shifted_random(args.shifted, seed=args.seed)


# ---------------------------------------------------------------------------
# plumbing


def _run_one(command: str, path: str, args) -> tuple[dict, int, str | None]:
    try:
        K = load_complex(path)
        if args.n < 1:
            raise Failure("--n must be >= 1")
        fields, code = COMMANDS[command](K, args)
        return report(command, input=path, **fields), code, None
    except Failure as exc:
        return {}, exc.code, f"{path}: {exc}"
    except ComplexFormatError as exc:
        return {}, EXIT_ERROR, f"{path}: validation error: {exc}"
    except OSError as exc:
        return {}, EXIT_ERROR, f"{path}: I/O error: {exc.strerror or exc}"
    except BudgetExceeded as exc:
        return {}, EXIT_ERROR, f"{path}: budget exceeded: {exc}"
    except TheoremViolation as exc:
        return {}, EXIT_VIOLATION, f"{path}: theorem violation: {exc}"
    except ValueError as exc:
        return {}, EXIT_ERROR, f"{path}: invalid input: {exc}"


def _format_table(rep: dict) -> str:
    lines = []
    for key, value in rep.items():
        if isinstance(value, dict):
            value = " ".join(f"{k}:{v}" for k, v in value.items()) if value else "-"
        elif isinstance(value, list):
            value = " ".join(json.dumps(v) if not isinstance(v, str) else v for v in value) or "-"
        lines.append(f"{key:<20} {value}")
    return "\n".join(lines)


def _emit(rep: dict, fmt: str) -> None:
    if fmt == "table":
        print(_format_table(rep))
        print()
    else:
        print(json.dumps(rep, sort_keys=True))


HELP = {
    "dual": "Alexander dual of the input complex",
    "betti": "Betti numbers of the moment-angle complex by brute force",
    "wedge": "sphere counts from the restriction formula",
    "verify": "compare Morse counts, brute-force Betti numbers and the wedge formula",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="disk dimension (default 2)")
    common.add_argument("--p", type=_prime, default=2, help="prime field (default 2)")
    common.add_argument("--budget-cells", type=_positive, default=DEFAULT_CELL_BUDGET)
    common.add_argument("--budget-nodes", type=_positive, default=None,
                        help="vertex decomposability search nodes (default 3^m + 1)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="zkmorse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("dual", "betti", "wedge", "verify"):
        p = sub.add_parser(name, parents=[common], help=HELP[name])
        p.add_argument("inputs", nargs="+")

    p = sub.add_parser("vd", parents=[common], help="vertex decomposability of the input complex")
    p.add_argument("action", choices=("check", "sequence", "verify"))
    p.add_argument("inputs", nargs="+")
    p.add_argument("--order", help="comma-separated shedding sequence v_1,...,v_l")
    p.add_argument("--strict-shedding", action=argparse.BooleanOptionalAction, default=True,
                   help="also require v_l to be a shedding vertex of the complex itself")

    p = sub.add_parser("crit", parents=[common], help="critical sign vectors of the matching")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--method", choices=("direct", "recursive", "both"), default="recursive")

    p = sub.add_parser("matching", parents=[common], help="build the matching and check acyclicity")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--dump", help="write the matching edges to this JSON file")

    p = sub.add_parser("gen", parents=[common], help="write a complex file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--skeleton", nargs=2, type=_positive, metavar=("M", "K"))
    group.add_argument("--boundary", type=_positive, metavar="M")
    group.add_argument("--full", type=_positive, metavar="M")
    group.add_argument("--random", type=_positive, metavar="M")
    group.add_argument("--shifted", type=_positive, metavar="M")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "gen":
        try:
            K = cmd_gen(args)
            text = dump_complex(K, args.output)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        if args.output is None:
            sys.stdout.write(text)
        return EXIT_OK

    try:
        workers = min(_threads(), len(args.inputs))
    except Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda path: _run_one(args.command, path, args), args.inputs))

    status = EXIT_OK
    for rep, code, err in results:
        if err is not None:
            print(f"error: {err}", file=sys.stderr)
        else:
            _emit(rep, args.format)
        status = max(status, code)
    return status


if __name__ == "__main__":
    sys.exit(main())
