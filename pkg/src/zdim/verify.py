"""Desk-scale checks of the counting, twin, distance and dimension results.

Each check returns a :class:`CheckResult`; budget overruns are reported as a
status rather than raised so a batch run can finish and print a partial table.
"""
from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional

from .errors import BudgetExceeded
from .matrix import (DEFAULT_CAP, SupportClass, all_classes, count_class_boolean,
                     enumerate_class, lift, pattern, support_class)
from .metric import (DEFAULT_NODE_BUDGET, build_general_resolving_set, build_WR,
                     dim_formula_boolean, dim_formula_general, exact_metric_dimension,
                     forced_twin_elements, is_resolving, no_extension_resolves,
                     predicted_WR_size)
from .semiring import FiniteSemiring, builtin_boolean
from .zdgraph import DEFAULT_VERTEX_CAP, ZeroDivisorGraph, build_graph, diameter, twin_classes

# exhaustive extension search is skipped above this many combinations
EXTENSION_LIMIT = 5_000_000


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "budget"
    detail: str
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "elapsed_ms": round(self.elapsed_ms, 3)}


class Verifier:
    """Runs checks for one (n, S), sharing built graphs between them."""

    def __init__(self, n: int, S: Optional[FiniteSemiring] = None, cap: int = DEFAULT_CAP,
                 vertex_cap: int = DEFAULT_VERTEX_CAP, node_budget: int = DEFAULT_NODE_BUDGET):
        self.n = n
        self.S = S or builtin_boolean()
        self.B = builtin_boolean()
        self.cap = cap
        self.vertex_cap = vertex_cap
        self.node_budget = node_budget
        self._graphs: dict[tuple, ZeroDivisorGraph] = {}
        self._lock = threading.Lock()

    def graph(self, S: FiniteSemiring) -> ZeroDivisorGraph:
        with self._lock:
            key = (S.order, S.one, S.add, S.mul)
            if key not in self._graphs:
                G = build_graph(S, self.n, self.cap, self.vertex_cap)
                G.distances  # materialize under the lock
                self._graphs[key] = G
            return self._graphs[key]

    # --- individual checks; each returns (ok, detail) ---------------------------

    def t_singleton(self):
        n, bad, checked = self.n, [], 0
        for cls in all_classes(n):
            if len(cls.I) != n - 1 and len(cls.J) != n - 1:
                continue
            checked += 1
            arith = count_class_boolean(n, len(cls.I), len(cls.J))
            listed = len(enumerate_class(n, cls, self.B))
            if arith != 1 or listed != 1:
                bad.append(f"{cls}: formula {arith}, enumerated {listed}")
        return not bad, f"{checked} classes with |I|=n-1 or |J|=n-1" + (f"; {bad[:3]}" if bad else "")

    def twins(self):
        G = self.graph(self.B)
        owner = twin_classes(G).block_of()
        split = []
        by_class: dict[SupportClass, set[int]] = {}
        for v, m in enumerate(G.vertices):
            by_class.setdefault(support_class(m), set()).add(owner[v])
        for cls, blocks in by_class.items():
            if len(blocks) > 1:
                split.append(str(cls))
        return not split, f"{len(by_class)} classes, {len(split)} split across twin blocks"

    def wr_size(self):
        built = len(build_WR(self.n, self.cap))
        predicted = predicted_WR_size(self.n)
        return built == predicted, f"|W_R| built={built} predicted={predicted}"

    def dist2(self):
        G = self.graph(self.B)
        D = G.distances
        sources = [v for v, m in enumerate(G.vertices)
                   if len(support_class(m).I) == 1 and len(support_class(m).J) == 1]
        worst = int(D[sources].max()) if sources else 0
        bad = int((D[sources] > 2).sum()) if sources else 0
        return bad == 0 and bool(sources), f"{len(sources)} sources, max distance {worst}, violations {bad}"

    def dist3(self):
        G = self.graph(self.B)
        D = G.distances
        classes = [support_class(m) for m in G.vertices]
        rows = [v for v, c in enumerate(classes) if c.I and not c.J]
        cols = [v for v, c in enumerate(classes) if c.J and not c.I]
        pairs = bad = 0
        for group, side in ((rows, "I"), (cols, "J")):
            for a in group:
                for b in group:
                    if a < b and not getattr(classes[a], side) & getattr(classes[b], side):
                        pairs += 1
                        bad += D[a, b] != 3
        return bad == 0 and pairs > 0, f"{pairs} qualifying pairs, violations {bad}"

    def wr_resolving(self):
        G = self.graph(self.B)
        W = [G.vertex_of(m) for m in build_WR(self.n, self.cap)]
        res = is_resolving(G, W)
        detail = f"|W_R|={len(W)} on {len(G)} vertices"
        if not res:
            a, b = res.witness
            detail += f"; unresolved {G.vertices[a]} / {G.vertices[b]}"
        return res.ok, detail

    def dim_boolean(self):
        formula = dim_formula_boolean(self.n)
        G = self.graph(self.B)
        W = [G.vertex_of(m) for m in build_WR(self.n, self.cap)]
        resolves = is_resolving(G, W).ok
        report = exact_metric_dimension(G, self.node_budget)
        forced = forced_twin_elements(G)
        parts = [f"formula={formula}", f"|W_R|={len(W)} resolves={resolves}",
                 f"oracle={report.oracle}", f"forced={len(forced)}"]
        ok = resolves and len(W) == formula == report.oracle
        forced_alone = is_resolving(G, forced).ok
        extra = formula - len(forced) - 1
        if extra >= 0:
            ok = ok and not forced_alone
            free = len(G) - len(forced)
            if comb(free, extra) <= EXTENSION_LIMIT:
                none = no_extension_resolves(G, forced, extra)
                parts.append(f"no {extra}-extension of forced set resolves: {none}")
                ok = ok and none
        return ok, ", ".join(parts)

    def pattern_twins(self):
        S = self.S
        G = self.graph(S)
        owner = twin_classes(G).block_of()
        bad_block = bad_nbhd = 0
        by_pattern: dict[int, set[int]] = {}
        for v, m in enumerate(G.vertices):
            p = G.vertex_of(lift(pattern(m), S))
            by_pattern.setdefault(p, set()).add(owner[v])
            if p != v:
                nv, np_ = G.neighbors(v), G.neighbors(p)
                if not (nv == np_ or nv | {v} == np_ | {p}):
                    bad_nbhd += 1
        bad_block = sum(len(b) > 1 for b in by_pattern.values())
        ok = bad_block == 0 and bad_nbhd == 0
        return ok, (f"{S.name}: {len(G)} vertices, {len(by_pattern)} patterns, "
                    f"neighbourhood mismatches {bad_nbhd}, split patterns {bad_block}")

    def dim_general(self):
        S, n = self.S, self.n
        formula = dim_formula_general(n, S.order)
        G = self.graph(S)
        report = exact_metric_dimension(G, self.node_budget)
        parts = [f"{S.name}: formula={formula}", f"oracle={report.oracle}"]
        ok = report.oracle == formula
        if S.order >= 3:
            W = [G.vertex_of(m) for m in build_general_resolving_set(S, n, self.cap)]
            resolves = is_resolving(G, W).ok
            parts.append(f"construction size={len(W)} resolves={resolves}")
            ok = ok and resolves and len(W) == formula
        return ok, ", ".join(parts)

    def diameter(self):
        G = self.graph(self.B)
        d = diameter(G)
        return d <= 3, f"diam={d} on {len(G)} vertices"


CHECKS: dict[str, tuple[str, Callable]] = {
    "t-singleton": ("lemma", Verifier.t_singleton),
    "twins": ("lemma", Verifier.twins),
    "wr-size": ("lemma", Verifier.wr_size),
    "dist2": ("lemma", Verifier.dist2),
    "dist3": ("lemma", Verifier.dist3),
    "pattern-twins": ("lemma", Verifier.pattern_twins),
    "wr-resolving": ("theorem", Verifier.wr_resolving),
    "dim-boolean": ("theorem", Verifier.dim_boolean),
    "dim-general": ("theorem", Verifier.dim_general),
    "diameter": ("lemma", Verifier.diameter),
}


def run_check(verifier: Verifier, name: str) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = CHECKS[name][1](verifier)
        status = "pass" if ok else "fail"
    except BudgetExceeded as exc:
        status, detail = "budget", str(exc)
    return CheckResult(name, status, detail, (time.perf_counter() - start) * 1000)


def run_checks(verifier: Verifier, names, threads: int = 1) -> list[CheckResult]:
    names = list(names)
    if threads <= 1:
        return [run_check(verifier, name) for name in names]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda name: run_check(verifier, name), names))
