import json
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zdim.errors import BudgetExceeded
from zdim.matrix import count_class_boolean, count_zero_divisors, parse_matrix, support_class
from zdim.metric import (DimReport, build_general_resolving_set, build_R, build_WR,
                         dim_formula_boolean, dim_formula_general, exact_metric_dimension,
                         forced_twin_elements, is_resolving, min_hitting_set,
                         no_extension_resolves, predicted_WR_size, representation)
from zdim.semiring import builtin_chain
from zdim.zdgraph import graph_from_adjacency, twin_classes


def complete(m):
    return graph_from_adjacency(np.ones((m, m), dtype=bool) & ~np.eye(m, dtype=bool))


def path(m):
    a = np.zeros((m, m), dtype=bool)
    for k in range(m - 1):
        a[k, k + 1] = a[k + 1, k] = True
    return graph_from_adjacency(a)


def brute_dimension(G):
    for k in range(len(G) + 1):
        for W in combinations(range(len(G)), k):
            if is_resolving(G, W):
                return k


# --- resolving sets -----------------------------------------------------------

def test_two_by_two_reference_set_resolves(g2):
    W = [g2.vertex_of(parse_matrix(t, 2)) for t in ("1,0;1,0", "1,1;0,0")]
    assert is_resolving(g2, W)


def test_whole_vertex_set_resolves(g2, g3, gc):
    for G in (g2, g3, gc):
        assert is_resolving(G, range(len(G)))


def test_empty_set_does_not_resolve(g2):
    res = is_resolving(g2, [])
    assert not res and res.witness == (0, 1)


def test_representation_vectors(g2):
    W = (0, 5)
    rep = representation(g2, W)
    for v in range(len(g2)):
        assert rep.of(v) == (g2.distances[v, 0], g2.distances[v, 5])


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 245), max_size=20))
def test_supersets_of_resolving_sets_resolve(g3, extra):
    W = [g3.vertex_of(m) for m in build_WR(3)]
    assert is_resolving(g3, set(W) | extra)


# --- the explicit construction --------------------------------------------------

def test_WR_two_by_two():
    assert [m.text() for m in build_WR(2)] == ["1,0;1,0", "1,1;0,0"]


def test_WR_three_by_three_size():
    W, R = build_WR(3), build_R(3)
    assert len(W) == 202
    assert len(W) + len(R) == count_zero_divisors(3, 2) - 1
    assert not {m.rank for m in W} & {m.rank for m in R}


def test_WR_keeps_all_but_one_of_each_large_class():
    W = build_WR(3)
    per_class = {}
    for m in W:
        cls = support_class(m)
        per_class[(cls.I, cls.J)] = per_class.get((cls.I, cls.J), 0) + 1
    for (I, J), k in per_class.items():
        if len(I) <= 1 and len(J) <= 1:
            assert k == count_class_boolean(3, len(I), len(J)) - 1
        else:
            assert k == 1  # singleton classes with an (n-1)-line side, other than N_{n-1}
            assert I != frozenset({1, 2}) or J
            assert J != frozenset({1, 2}) or I


@pytest.mark.parametrize("n, expected", [(2, 2), (3, 202)])
def test_predicted_size(n, expected):
    assert predicted_WR_size(n) == expected == dim_formula_boolean(n)


def test_predicted_size_matches_construction_n4():
    assert len(build_WR(4)) == predicted_WR_size(4) == dim_formula_boolean(4)


def test_literal_product_reading_is_too_small():
    # summing only over i*j != 0 gives 58 at n=3, below the 198 forced twins
    literal = 2 * 2 + comb(3, 1) ** 2 * (count_class_boolean(3, 1, 1) - 1)
    assert literal == 58 < 198


def test_WR_resolves_n3(g3):
    assert is_resolving(g3, [g3.vertex_of(m) for m in build_WR(3)])


# --- forced twins and the exact oracle ------------------------------------------

def test_forced_counts(g2, g3, gc):
    assert forced_twin_elements(g2) == []
    assert len(forced_twin_elements(g3)) == 198 == predicted_WR_size(3) - 2 * (3 - 1)
    assert len(forced_twin_elements(gc)) == 16


def test_forced_leaves_out_highest_rank(g3):
    forced = set(forced_twin_elements(g3))
    for blk in twin_classes(g3).blocks:
        assert max(blk) not in forced
        assert set(blk[:-1]) <= forced


def test_forced_on_single_twin_pair():
    assert forced_twin_elements(path(3)) == [0]


def test_exact_two_by_two(g2):
    report = exact_metric_dimension(g2)
    assert report.oracle == 2
    assert is_resolving(g2, report.basis)


@pytest.mark.parametrize("m", [2, 3, 5, 7])
def test_exact_complete_graph(m):
    assert exact_metric_dimension(complete(m)).oracle == m - 1


@pytest.mark.parametrize("m", [2, 4, 6])
def test_exact_path(m):
    assert exact_metric_dimension(path(m)).oracle == 1


def test_exact_matches_brute_force_on_small_graph(g2):
    assert brute_dimension(g2) == 2


def test_exact_without_twin_reduction(g2, gc):
    assert exact_metric_dimension(g2, use_twins=False).oracle == 2
    assert exact_metric_dimension(gc, use_twins=False).oracle == 16


def test_exact_three_by_three(g3):
    report = exact_metric_dimension(g3)
    assert report.oracle == 202 == dim_formula_boolean(3)
    assert report.forced == 198
    assert is_resolving(g3, report.basis)


def test_basis_contains_a_member_of_every_twin_pair(g3, gc):
    for G in (g3, gc):
        basis = set(exact_metric_dimension(G).basis)
        for blk in twin_classes(G).blocks:
            assert len(set(blk) - basis) <= 1


def test_forced_alone_insufficient_n3(g3):
    forced = forced_twin_elements(g3)
    assert not is_resolving(g3, forced)
    assert no_extension_resolves(g3, forced, 3)
    assert not no_extension_resolves(g3, forced, 4)


def test_budget_reports_bounds(g3):
    with pytest.raises(BudgetExceeded) as info:
        exact_metric_dimension(g3, node_budget=1)
    lo, hi = info.value.bounds
    assert lo <= 202 <= hi


# --- hitting sets against brute force -------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 2 ** 8 - 1), min_size=1, max_size=12))
def test_min_hitting_set_is_optimal(sets):
    result = min_hitting_set(sets)
    assert all(s & result.chosen for s in sets)
    best = next(k for k in range(9) for combo in combinations(range(8), k)
                if all(any(s >> e & 1 for e in combo) for s in sets))
    assert result.chosen.bit_count() == best


def test_hitting_set_rejects_empty_member():
    with pytest.raises(ValueError):
        min_hitting_set([0b1, 0])


# --- general semirings ----------------------------------------------------------

def test_general_formula_values():
    assert dim_formula_general(2, 3) == 16
    assert dim_formula_general(2, 3) == (count_zero_divisors(2, 3) - count_zero_divisors(2, 2)) + 2 - 2
    for n in (2, 3, 4):
        assert dim_formula_general(n, 2) == dim_formula_boolean(n)
    with pytest.raises(ValueError):
        dim_formula_general(2, 1)


def test_general_construction_two_by_two(gc, chain3):
    W = build_general_resolving_set(chain3, 2)
    assert len(W) == 16
    assert all(any(e == 1 for e in m.entries) for m in W)  # 1 is the middle element, not one
    assert is_resolving(gc, [gc.vertex_of(m) for m in W])


def test_general_construction_size_three_by_three():
    assert len(build_general_resolving_set(builtin_chain(3), 3)) == dim_formula_general(3, 3)


def test_general_construction_needs_three_elements(B):
    with pytest.raises(ValueError):
        build_general_resolving_set(B, 2)


def test_exact_general(gc):
    assert exact_metric_dimension(gc).oracle == 16


def test_dim_report_json():
    r = DimReport(formula=2, constructed_size=2, oracle=2, basis_ranks=[10, 12]).settle()
    doc = json.loads(r.to_json())
    assert {"formula", "constructed_size", "oracle", "basis_ranks", "witness",
            "elapsed_ms", "verdict"} <= set(doc)
    assert doc["verdict"] == "pass"
    assert DimReport(formula=2, oracle=3).settle().verdict == "fail"
