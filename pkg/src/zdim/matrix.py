"""Square matrices over a finite semiring, support classes and counting.

Matrices store carrier indices in row-major order.  The canonical rank of a
matrix reads those entries as a base-q numeral, most significant first, so
ascending rank is lexicographic row-major order.

Index sets in :class:`SupportClass` are 1-based to match the usual ``N_n``
notation; bit masks are 0-based (bit ``i`` is row/column ``i + 1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterator, Optional

from .errors import BudgetExceeded, MatrixError
from .semiring import FiniteSemiring

DEFAULT_CAP = 2 ** 24


@dataclass(frozen=True)
class SMatrix:
    n: int
    q: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise MatrixError(f"expected {self.n * self.n} entries, got {len(self.entries)}")
        for k, e in enumerate(self.entries):
            if not 0 <= e < self.q:
                i, j = divmod(k, self.n)
                raise MatrixError(f"entry ({i + 1},{j + 1}) = {e} is outside 0..{self.q - 1}")

    @classmethod
    def from_rows(cls, rows, q: int) -> "SMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MatrixError("matrix must be square")
        return cls(n, q, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_rank(cls, rank: int, n: int, q: int) -> "SMatrix":
        if not 0 <= rank < q ** (n * n):
            raise MatrixError(f"rank {rank} out of range for n={n}, q={q}")
        digits = []
        for _ in range(n * n):
            rank, d = divmod(rank, q)
            digits.append(d)
        return cls(n, q, tuple(reversed(digits)))

    @classmethod
    def zero(cls, n: int, q: int) -> "SMatrix":
        return cls(n, q, (0,) * (n * n))

    @property
    def rank(self) -> int:
        r = 0
        for e in self.entries:
            r = r * self.q + e
        return r

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(self.entries[i * n:(i + 1) * n] for i in range(n))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.n + j]

    def is_zero(self) -> bool:
        return not any(self.entries)

    @property
    def row_mask(self) -> int:
        """Bit i set iff row i has a nonzero entry."""
        n, mask = self.n, 0
        for i in range(n):
            if any(self.entries[i * n:(i + 1) * n]):
                mask |= 1 << i
        return mask

    @property
    def col_mask(self) -> int:
        """Bit j set iff column j has a nonzero entry."""
        n, mask = self.n, 0
        for j in range(n):
            if any(self.entries[j::n]):
                mask |= 1 << j
        return mask

    def bit_rows(self) -> tuple[int, ...]:
        """Per-row bit masks of nonzero entries (the Boolean row encoding)."""
        n = self.n
        return tuple(
            sum(1 << j for j in range(n) if self.entries[i * n + j]) for i in range(n))

    def text(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    def __str__(self) -> str:
        return self.text()


def parse_matrix(text: str, q: int) -> SMatrix:
    """Parse the ``"0,0;1,1"`` text form."""
    try:
        rows = [[int(x) for x in row.split(",")] for row in text.strip().split(";")]
    except ValueError as exc:
        raise MatrixError(f"cannot parse matrix {text!r}") from exc
    return SMatrix.from_rows(rows, q)


def identity(n: int, S: FiniteSemiring) -> SMatrix:
    return SMatrix(n, S.order, tuple(S.one if i == j else 0 for i in range(n) for j in range(n)))


def unit(n: int, i: int, j: int, S: FiniteSemiring) -> SMatrix:
    """E_ij with 1-based indices."""
    e = [0] * (n * n)
    e[(i - 1) * n + (j - 1)] = S.one
    return SMatrix(n, S.order, tuple(e))


def mat_mul(A: SMatrix, B: SMatrix, S: FiniteSemiring) -> SMatrix:
    if A.n != B.n:
        raise MatrixError(f"dimension mismatch: {A.n} vs {B.n}")
    if A.q != S.order or B.q != S.order:
        raise MatrixError("matrix entries do not belong to this semiring")
    n, add, mul = A.n, S.add, S.mul
    a, b = A.entries, B.entries
    out = []
    for i in range(n):
        arow = a[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add[acc][mul[arow[k]][b[k * n + j]]]
            out.append(acc)
    return SMatrix(n, S.order, tuple(out))


def pattern(A: SMatrix, S: Optional[FiniteSemiring] = None) -> SMatrix:
    """The 0/1 matrix marking nonzero entries, as a Boolean (q=2) matrix."""
    return SMatrix(A.n, 2, tuple(1 if e else 0 for e in A.entries))


def lift(P: SMatrix, S: FiniteSemiring) -> SMatrix:
    """Embed a Boolean matrix into M_n(S) via 0 -> 0, 1 -> one."""
    if P.q != 2:
        raise MatrixError("lift expects a Boolean matrix")
    return SMatrix(P.n, S.order, tuple(S.one if e else 0 for e in P.entries))


@dataclass(frozen=True)
class SupportClass:
    """Exact zero rows ``I`` and exact zero columns ``J`` (1-based)."""

    n: int
    I: frozenset
    J: frozenset

    @classmethod
    def from_masks(cls, n: int, zero_rows: int, zero_cols: int) -> "SupportClass":
        return cls(n, _mask_to_set(zero_rows, n), _mask_to_set(zero_cols, n))

    @property
    def zero_row_mask(self) -> int:
        return sum(1 << (i - 1) for i in self.I)

    @property
    def zero_col_mask(self) -> int:
        return sum(1 << (j - 1) for j in self.J)

    def __str__(self) -> str:
        fmt = lambda s: "{" + ",".join(map(str, sorted(s))) + "}" if s else "{}"
        return f"T[{fmt(self.I)},{fmt(self.J)}]"


def _mask_to_set(mask: int, n: int) -> frozenset:
    return frozenset(i + 1 for i in range(n) if mask >> i & 1)


def support_class(A: SMatrix) -> SupportClass:
    if A.is_zero():
        raise MatrixError("the zero matrix has no support class")
    full = (1 << A.n) - 1
    return SupportClass.from_masks(A.n, full & ~A.row_mask, full & ~A.col_mask)


def check_budget(n: int, q: int, cap: int = DEFAULT_CAP) -> None:
    total = q ** (n * n)
    if total > cap:
        raise BudgetExceeded(f"M_{n} over a {q}-element semiring has {total} matrices; cap is {cap}")


def all_matrices(n: int, q: int, cap: int = DEFAULT_CAP) -> Iterator[SMatrix]:
    """Every matrix of M_n(S) in ascending rank."""
    check_budget(n, q, cap)
    for entries in product(range(q), repeat=n * n):
        yield SMatrix(n, q, entries)


def enumerate_class(n: int, cls: SupportClass, S: FiniteSemiring) -> list[SMatrix]:
    """All matrices whose zero rows are exactly I and zero columns exactly J."""
    if not (cls.I <= set(range(1, n + 1)) and cls.J <= set(range(1, n + 1))):
        raise MatrixError(f"{cls} has indices outside 1..{n}")
    full = frozenset(range(1, n + 1))
    if cls.I == full and cls.J == full:
        raise MatrixError("T[N,N] holds only the zero matrix")
    rows = [i for i in range(n) if i + 1 not in cls.I]
    cols = [j for j in range(n) if j + 1 not in cls.J]
    if not rows or not cols:
        return []
    q = S.order
    out = []
    cells = [(i, j) for i in rows for j in cols]
    for values in product(range(q), repeat=len(cells)):
        e = [0] * (n * n)
        for (i, j), v in zip(cells, values):
            e[i * n + j] = v
        if all(any(e[i * n + j] for j in cols) for i in rows) and \
                all(any(e[i * n + j] for i in rows) for j in cols):
            out.append(SMatrix(n, q, tuple(e)))
    out.sort(key=lambda m: m.rank)
    return out


def all_classes(n: int) -> Iterator[SupportClass]:
    """Every (I, J) that can hold a nonzero zero-divisor, i.e. I or J nonempty, neither = N_n."""
    for i in range(n):
        for I in combinations(range(1, n + 1), i):
            for j in range(n):
                if i == 0 and j == 0:
                    continue
                for J in combinations(range(1, n + 1), j):
                    yield SupportClass(n, frozenset(I), frozenset(J))


def count_no_zero_lines(r: int, c: int, q: int) -> int:
    """r x c matrices over a q-element entire antiring with no zero row or column.

    Inclusion-exclusion over the set of forced zero columns.
    """
    if r < 0 or c < 0 or q < 2:
        raise ValueError("need r, c >= 0 and q >= 2")
    return sum((-1) ** k * comb(c, k) * (q ** (c - k) - 1) ** r for k in range(c + 1))


def count_class(n: int, i: int, j: int, q: int = 2) -> int:
    """|T_{I,J}| for |I| = i, |J| = j over a q-element entire antiring."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"class sizes must lie in 0..{n}")
    if i == n and j == n:
        raise ValueError("i = j = n is the zero matrix, not a class")
    return count_no_zero_lines(n - i, n - j, q)


def count_class_boolean(n: int, i: int, j: int) -> int:
    """t_{i,j}: Boolean matrices with exactly i prescribed zero rows and j zero columns."""
    return count_class(n, i, j, 2)


def count_zero_divisors(n: int, q: int) -> int:
    """|Z(M_n(S))| including the zero matrix: matrices with a zero row or column."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    return q ** (n * n) - count_no_zero_lines(n, n, q)


def is_zero_divisor(A: SMatrix, S: Optional[FiniteSemiring] = None) -> bool:
    """True iff A has a zero row or a zero column (valid over entire antirings)."""
    full = (1 << A.n) - 1
    return A.row_mask != full or A.col_mask != full


def annihilates(A: SMatrix, B: SMatrix) -> bool:
    """AB = 0 over an entire antiring: nonzero columns of A miss nonzero rows of B."""
    return A.col_mask & B.row_mask == 0
