"""``zdim`` command line: axioms, counts, verify, graph, dim.

Exit codes: 0 pass, 1 verification failure or bad input, 2 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import BudgetExceeded, ZdimError
from .matrix import DEFAULT_CAP, count_class, count_zero_divisors
from .metric import (DEFAULT_NODE_BUDGET, DimReport, build_general_resolving_set, build_WR,
                     dim_formula_general, exact_metric_dimension, is_resolving)
from .oracles import brute_class_sizes, brute_zero_divisor_count
from .semiring import FiniteSemiring, SemiringFormatError, builtin, check_axioms, parse_semiring
from .verify import CHECKS, Verifier, run_checks
from .zdgraph import (DEFAULT_VERTEX_CAP, build_graph, diameter, distance_csv, to_dot,
                      twin_classes)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2


def _load(args) -> FiniteSemiring:
    if args.file:
        try:
            doc = json.loads(Path(args.file).read_text())
        except json.JSONDecodeError as exc:
            raise SemiringFormatError(f"{args.file}: invalid JSON: {exc}") from exc
        return parse_semiring(doc)
    return builtin(args.builtin or "boolean")


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def cmd_axioms(args) -> int:
    if args.file:
        try:
            doc = json.loads(Path(args.file).read_text())
        except json.JSONDecodeError as exc:
            raise SemiringFormatError(f"{args.file}: invalid JSON: {exc}") from exc
        for key in ("add", "mul"):
            if key not in doc:
                raise SemiringFormatError(f"missing field {key!r}")
        name = doc.get("name", args.file)
        report = check_axioms(doc["add"], doc["mul"], doc.get("one", 1))
    else:
        S = builtin(args.builtin or "boolean")
        name, report = S.name, check_axioms(S.add, S.mul, S.one)
    payload = {"name": name, **report.to_dict()}
    verdict = "pass" if report.ok else "FAIL"
    _emit(args, payload, f"semiring {name}: {verdict}\n{report}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_counts(args) -> int:
    S, n = _load(args), args.n
    q = S.order
    table = [[count_class(n, i, j, q) for j in range(n)] for i in range(n)]
    zd = count_zero_divisors(n, q)
    payload = {"semiring": S.name, "n": n, "q": q, "class_sizes": table,
               "zero_divisors": zd, "vertices": zd - 1}
    lines = [f"semiring {S.name} (q={q}), n={n}",
             "class sizes |T_{I,J}| by (|I| rows, |J| columns):",
             "  i\\j " + " ".join(f"{j:>10}" for j in range(n))]
    for i, row in enumerate(table):
        lines.append(f"  {i:>3} " + " ".join(f"{x:>10}" for x in row))
    lines += [f"|Z(M_n(S))| = {zd}", f"vertices    = {zd - 1}"]
    ok = True
    if args.check:
        sizes = brute_class_sizes(n, q, args.cap)
        mismatches = []
        for (I, J), size in sorted(sizes.items(), key=lambda kv: (len(kv[0][0]), len(kv[0][1]))):
            if len(I) == n and len(J) == n:
                continue
            expected = count_class(n, len(I), len(J), q)
            if expected != size:
                mismatches.append(f"|I|={len(I)} |J|={len(J)}: formula {expected}, enumerated {size}")
        brute_zd = brute_zero_divisor_count(n, q, args.cap)
        if brute_zd != zd:
            mismatches.append(f"|Z|: formula {zd}, enumerated {brute_zd}")
        ok = not mismatches
        payload["check"] = {"ok": ok, "mismatches": mismatches, "classes": len(sizes)}
        lines.append(f"check: {'pass' if ok else 'FAIL'} ({len(sizes)} classes enumerated)")
        lines += [f"  {m}" for m in mismatches]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    names = []
    if args.all:
        names = list(CHECKS)
    else:
        names = [*(args.lemma or []), *(args.theorem or [])]
    if not names:
        raise ZdimError("nothing to verify: pass --lemma, --theorem or --all")
    S = _load(args)
    verifier = Verifier(args.n, S, args.cap, args.vertex_cap, args.node_budget)
    results = run_checks(verifier, names, args.threads)
    payload = {"n": args.n, "semiring": S.name, "checks": [r.to_dict() for r in results]}
    width = max(len(r.name) for r in results)
    text = "\n".join(f"{r.name:<{width}}  {r.status.upper():<6}  {r.detail}" for r in results)
    if args.json:
        for r in payload["checks"]:
            del r["elapsed_ms"]
    _emit(args, payload, text)
    if any(r.status == "budget" for r in results):
        return EXIT_BUDGET
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_graph(args) -> int:
    S = _load(args)
    G = build_graph(S, args.n, args.cap, args.vertex_cap)
    d = diameter(G)
    census = twin_classes(G).census()
    if args.dot:
        Path(args.dot).write_text(to_dot(G))
    if args.csv:
        Path(args.csv).write_text(distance_csv(G))
    payload = {"semiring": S.name, "n": args.n, "vertices": len(G), "edges": G.num_edges,
               "diameter": d, "twin_blocks": {str(k): v for k, v in census.items()}}
    text = (f"semiring {S.name}, n={args.n}: V={len(G)} E={G.num_edges} diameter={d}\n"
            f"twin blocks (size: count): {census}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_dim(args) -> int:
    S, n = _load(args), args.n
    start = time.perf_counter()
    report = DimReport(formula=dim_formula_general(n, S.order))
    basis = None
    try:
        if S.order == 2:
            basis = build_WR(n, args.cap)
        else:
            basis = build_general_resolving_set(S, n, args.cap)
        report.constructed_size = len(basis)
        report.basis_ranks = [m.rank for m in basis]
        if args.exact or args.construct:
            G = build_graph(S, n, args.cap, args.vertex_cap)
            res = is_resolving(G, [G.vertex_of(m) for m in basis])
            if not res:
                report.witness = [G.vertices[v].text() for v in res.witness]
            if args.exact:
                exact = exact_metric_dimension(G, args.node_budget)
                report.oracle = exact.oracle
                report.forced = exact.forced
                report.nodes = exact.nodes
    except BudgetExceeded as exc:
        report.verdict = "budget"
        report.bounds = list(exc.bounds) if exc.bounds else None
    report.settle()
    report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    if args.construct and basis is not None:
        Path(args.construct).write_text("".join(m.text() + "\n" for m in basis))
    lines = [f"semiring {S.name}, n={n}",
             f"formula          {report.formula}",
             f"constructed size {report.constructed_size}"]
    if report.oracle is not None:
        lines.append(f"oracle           {report.oracle} (forced twins {report.forced})")
    if report.witness:
        lines.append(f"unresolved pair  {report.witness}")
    if report.bounds:
        lines.append(f"bounds           {report.bounds}")
    lines.append(f"verdict          {report.verdict}")
    print(report.to_json() if args.json else "\n".join(lines))
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "budget": EXIT_BUDGET}[report.verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zdim", description="Zero-divisor graphs of matrix semirings and their metric dimension.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--builtin", help="builtin semiring: boolean or chain<q> (default boolean)")
    src.add_argument("--file", help="JSON semiring definition")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--n", type=int, default=2, help="matrix size (default 2)")
    sized.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="max matrices to enumerate (default 2^24)")
    sized.add_argument("--vertex-cap", type=int, default=DEFAULT_VERTEX_CAP)
    sized.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    sized.add_argument("--threads", type=int, default=1)

    sub.add_parser("axioms", parents=[common], help="check semiring axioms").set_defaults(func=cmd_axioms)

    p = sub.add_parser("counts", parents=[common, sized], help="class sizes and zero-divisor count")
    p.add_argument("--check", action="store_true", help="re-derive every count by enumeration")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("verify", parents=[common, sized], help="run lemma/theorem checks")
    lemmas = [k for k, (kind, _) in CHECKS.items() if kind == "lemma"]
    theorems = [k for k, (kind, _) in CHECKS.items() if kind == "theorem"]
    p.add_argument("--lemma", action="append", choices=lemmas)
    p.add_argument("--theorem", action="append", choices=theorems)
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", parents=[common, sized], help="build and export the graph")
    p.add_argument("--dot", help="write Graphviz DOT here")
    p.add_argument("--csv", help="write the distance matrix here")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("dim", parents=[common, sized], help="metric dimension report")
    p.add_argument("--exact", action="store_true", help="run the exact oracle")
    p.add_argument("--construct", metavar="PATH", help="write the constructed basis here")
    p.set_defaults(func=cmd_dim)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 2) < 2:
        print("zdim: --n must be at least 2", file=sys.stderr)
        return EXIT_FAIL
    for cap in ("cap", "vertex_cap", "node_budget", "threads"):
        if getattr(args, cap, 1) < 1:
            print(f"zdim: --{cap.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_FAIL
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"zdim: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ZdimError, ValueError, OSError) as exc:
        print(f"zdim: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
