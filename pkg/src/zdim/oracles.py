"""Brute-force references used to cross-check the fast paths.

Nothing here relies on the zero-row/zero-column shortcuts: products are
evaluated through the semiring tables and counts come from enumeration.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .matrix import DEFAULT_CAP, SMatrix, check_budget, mat_mul
from .semiring import FiniteSemiring


def brute_count_no_zero_lines(r: int, c: int, q: int) -> int:
    count = 0
    for values in product(range(q), repeat=r * c):
        rows_ok = all(any(values[i * c + j] for j in range(c)) for i in range(r))
        cols_ok = all(any(values[i * c + j] for i in range(r)) for j in range(c))
        count += rows_ok and cols_ok
    return count


def _all_entries(n: int, q: int, cap: int) -> np.ndarray:
    check_budget(n, q, cap)
    ranks = np.arange(q ** (n * n), dtype=np.int64)
    digits = np.empty((ranks.size, n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        ranks, digits[:, k] = np.divmod(ranks, q)
    return digits.reshape(-1, n, n)


def _products(A: np.ndarray, Bs: np.ndarray, add: np.ndarray, mul: np.ndarray) -> np.ndarray:
    """A @ B for every B in the batch, evaluated through the operation tables."""
    n = A.shape[0]
    out = np.zeros(Bs.shape, dtype=np.int64)
    for k in range(n):
        # term[b, i, j] = A[i, k] * B[b, k, j]
        term = mul[A[:, k][None, :, None], Bs[:, k, :][:, None, :]]
        out = add[out, term]
    return out


def _left_products(Bs: np.ndarray, A: np.ndarray, add: np.ndarray, mul: np.ndarray) -> np.ndarray:
    """B @ A for every B in the batch."""
    n = A.shape[0]
    out = np.zeros(Bs.shape, dtype=np.int64)
    for k in range(n):
        term = mul[Bs[:, :, k][:, :, None], A[k, :][None, None, :]]
        out = add[out, term]
    return out


def zero_divisor_table(n: int, S: FiniteSemiring, cap: int = DEFAULT_CAP) -> np.ndarray:
    """For every matrix (by rank): does some nonzero B give AB = 0 or BA = 0?"""
    mats = _all_entries(n, S.order, cap)
    add, mul = np.array(S.add), np.array(S.mul)
    nonzero = mats[1:]  # rank 0 is the zero matrix
    verdict = np.zeros(len(mats), dtype=bool)
    for r, A in enumerate(mats):
        right = _products(A, nonzero, add, mul).reshape(len(nonzero), -1).any(axis=1)
        if not right.all():
            verdict[r] = True
            continue
        left = _left_products(nonzero, A, add, mul).reshape(len(nonzero), -1).any(axis=1)
        verdict[r] = not left.all()
    return verdict


def is_zero_divisor_bruteforce(A: SMatrix, S: FiniteSemiring) -> bool:
    mats = _all_entries(A.n, S.order, DEFAULT_CAP)[1:]
    add, mul = np.array(S.add), np.array(S.mul)
    a = np.array(A.rows)
    right = _products(a, mats, add, mul).reshape(len(mats), -1).any(axis=1)
    left = _left_products(mats, a, add, mul).reshape(len(mats), -1).any(axis=1)
    return bool(not right.all() or not left.all())


def edge_by_multiplication(G, S: FiniteSemiring) -> np.ndarray:
    """Adjacency recomputed with explicit products over all vertex pairs."""
    V = len(G)
    zero = SMatrix.zero(G.n, S.order)
    adj = np.zeros((V, V), dtype=bool)
    for u in range(V):
        A = G.vertices[u]
        for v in range(u + 1, V):
            B = G.vertices[v]
            if mat_mul(A, B, S) == zero or mat_mul(B, A, S) == zero:
                adj[u, v] = adj[v, u] = True
    return adj


def brute_class_sizes(n: int, q: int, cap: int = DEFAULT_CAP) -> dict[tuple[frozenset, frozenset], int]:
    """Count every matrix by its exact (zero rows, zero columns), 1-based."""
    sizes: dict[tuple[frozenset, frozenset], int] = {}
    for M in _all_entries(n, q, cap):
        I = frozenset(i + 1 for i in range(n) if not M[i].any())
        J = frozenset(j + 1 for j in range(n) if not M[:, j].any())
        sizes[(I, J)] = sizes.get((I, J), 0) + 1
    return sizes


def brute_zero_divisor_count(n: int, q: int, cap: int = DEFAULT_CAP) -> int:
    """Matrices with at least one zero row or column, by enumeration."""
    M = _all_entries(n, q, cap)
    zero_row = ~M.any(axis=2)
    zero_col = ~M.any(axis=1)
    return int((zero_row.any(axis=1) | zero_col.any(axis=1)).sum())
