"""Finite semirings given by operation tables.

Carrier elements are the indices ``0..q-1``; index 0 is always the additive
identity.  Only commutative, entire, antinegative semirings are accepted by
:func:`load_semiring` and :meth:`FiniteSemiring.from_tables`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Sequence

from .errors import AxiomError, SemiringFormatError

Table = tuple[tuple[int, ...], ...]

# Order matters: it is the reporting order in text and JSON output.
AXIOMS = (
    "add_associative",
    "add_commutative",
    "add_identity",
    "mul_associative",
    "mul_identity",
    "left_distributive",
    "right_distributive",
    "zero_annihilates",
    "mul_commutative",
    "entire",
    "antinegative",
)

REQUIRED = AXIOMS


@dataclass
class AxiomReport:
    """Verdict per axiom plus a replayable witness for each failure."""

    verdicts: dict[str, bool]
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts[name] for name in REQUIRED)

    @property
    def failed(self) -> list[str]:
        return [name for name in AXIOMS if not self.verdicts[name]]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "verdicts": {name: self.verdicts[name] for name in AXIOMS},
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }

    def __str__(self) -> str:
        lines = []
        for name in AXIOMS:
            mark = "pass" if self.verdicts[name] else "FAIL"
            line = f"{name:<20} {mark}"
            if name in self.witnesses:
                line += f"  witness={self.witnesses[name]}"
            lines.append(line)
        return "\n".join(lines)


def _as_table(raw, q: int, label: str) -> Table:
    if not isinstance(raw, Sequence) or len(raw) != q:
        raise SemiringFormatError(f"{label} table must have {q} rows")
    rows = []
    for a, row in enumerate(raw):
        if not isinstance(row, Sequence) or len(row) != q:
            raise SemiringFormatError(f"{label}[{a}] must have {q} entries")
        for b, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, int):
                raise SemiringFormatError(f"{label}[{a}][{b}] is not an integer: {value!r}")
            if not 0 <= value < q:
                raise SemiringFormatError(f"{label}[{a}][{b}] = {value} is outside 0..{q - 1}")
        rows.append(tuple(row))
    return tuple(rows)


def check_axioms(add, mul, one: int = 1) -> AxiomReport:
    """Exhaustively check every semiring axiom over all pairs and triples.

    Witnesses are the first violating tuple in lexicographic order.  Raises
    :class:`SemiringFormatError` for malformed tables.
    """
    if not isinstance(add, Sequence):
        raise SemiringFormatError("add table must be a list of rows")
    q = len(add)
    if q < 2:
        raise SemiringFormatError(f"order must be at least 2, got {q}")
    A = _as_table(add, q, "add")
    M = _as_table(mul, q, "mul")
    if isinstance(one, bool) or not isinstance(one, int) or not 0 <= one < q:
        raise SemiringFormatError(f"one = {one!r} is outside 0..{q - 1}")

    checks = {
        "add_associative": (3, lambda a, b, c: A[A[a][b]][c] == A[a][A[b][c]]),
        "add_commutative": (2, lambda a, b: A[a][b] == A[b][a]),
        "add_identity": (1, lambda a: A[0][a] == a and A[a][0] == a),
        "mul_associative": (3, lambda a, b, c: M[M[a][b]][c] == M[a][M[b][c]]),
        "mul_identity": (1, lambda a: M[one][a] == a and M[a][one] == a),
        "left_distributive": (3, lambda a, b, c: M[a][A[b][c]] == A[M[a][b]][M[a][c]]),
        "right_distributive": (3, lambda a, b, c: M[A[a][b]][c] == A[M[a][c]][M[b][c]]),
        "zero_annihilates": (1, lambda a: M[0][a] == 0 and M[a][0] == 0),
        "mul_commutative": (2, lambda a, b: M[a][b] == M[b][a]),
        "entire": (2, lambda a, b: M[a][b] != 0 or a == 0 or b == 0),
        "antinegative": (2, lambda a, b: A[a][b] != 0 or (a == 0 and b == 0)),
    }
    verdicts: dict[str, bool] = {}
    witnesses: dict[str, tuple[int, ...]] = {}
    for name in AXIOMS:
        arity, holds = checks[name]
        verdicts[name] = True
        for args in product(range(q), repeat=arity):
            if not holds(*args):
                verdicts[name] = False
                witnesses[name] = args
                break
    return AxiomReport(verdicts, witnesses)


@dataclass(frozen=True)
class FiniteSemiring:
    name: str
    order: int
    add: Table
    mul: Table
    one: int
    zero: int = 0

    @classmethod
    def from_tables(cls, name: str, add, mul, one: int) -> "FiniteSemiring":
        report = check_axioms(add, mul, one)
        if not report.ok:
            raise AxiomError(
                f"semiring {name!r} fails: {', '.join(report.failed)}", report
            )
        q = len(add)
        return cls(name, q, _as_table(add, q, "add"), _as_table(mul, q, "mul"), one)

    @property
    def commutative(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    @property
    def entire(self) -> bool:
        return check_axioms(self.add, self.mul, self.one).verdicts["entire"]

    @property
    def antinegative(self) -> bool:
        return check_axioms(self.add, self.mul, self.one).verdicts["antinegative"]

    @property
    def is_boolean(self) -> bool:
        return self.order == 2

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "one": self.one,
            "add": [list(r) for r in self.add],
            "mul": [list(r) for r in self.mul],
        }

    def same_tables(self, other: "FiniteSemiring") -> bool:
        return (self.order, self.one, self.add, self.mul) == (
            other.order, other.one, other.add, other.mul)


def builtin_chain(q: int) -> FiniteSemiring:
    """The chain ``0 < 1 < ... < q-1`` with max as addition, min as multiplication."""
    if q < 2:
        raise ValueError(f"chain order must be at least 2, got {q}")
    add = [[max(a, b) for b in range(q)] for a in range(q)]
    mul = [[min(a, b) for b in range(q)] for a in range(q)]
    return FiniteSemiring.from_tables(f"chain{q}", add, mul, q - 1)


def builtin_boolean() -> FiniteSemiring:
    """The Boolean semiring: OR as addition, AND as multiplication."""
    return FiniteSemiring.from_tables(
        "boolean", [[0, 1], [1, 1]], [[0, 0], [0, 1]], 1)


def builtin(name: str) -> FiniteSemiring:
    """Resolve a builtin by name: ``boolean`` or ``chain<q>``."""
    if name in ("boolean", "B", "bool"):
        return builtin_boolean()
    if name.startswith("chain") and name[5:].isdigit():
        return builtin_chain(int(name[5:]))
    raise ValueError(f"unknown builtin semiring {name!r} (use 'boolean' or 'chain<q>')")


def parse_semiring(doc: dict) -> FiniteSemiring:
    if not isinstance(doc, dict):
        raise SemiringFormatError("semiring definition must be a JSON object")
    for key in ("order", "one", "add", "mul"):
        if key not in doc:
            raise SemiringFormatError(f"missing field {key!r}")
    q = doc["order"]
    if isinstance(q, bool) or not isinstance(q, int) or q < 2:
        raise SemiringFormatError(f"order must be an integer >= 2, got {q!r}")
    if not isinstance(doc["add"], list) or len(doc["add"]) != q:
        raise SemiringFormatError(f"add table must have {q} rows")
    return FiniteSemiring.from_tables(
        str(doc.get("name", "unnamed")), doc["add"], doc["mul"], doc["one"])


def load_semiring(path) -> FiniteSemiring:
    """Read a JSON semiring definition and validate it."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SemiringFormatError(f"{path}: invalid JSON: {exc}") from exc
    return parse_semiring(doc)

