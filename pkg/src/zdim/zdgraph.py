"""The zero-divisor graph of M_n(S): construction, distances, twins, export."""
from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, DisconnectedGraphError
from .matrix import DEFAULT_CAP, SMatrix, all_matrices, is_zero_divisor
from .semiring import FiniteSemiring

INF = 255
DEFAULT_VERTEX_CAP = 8192


@dataclass
class ZeroDivisorGraph:
    n: int
    q: int
    vertices: list[SMatrix]
    adj: np.ndarray  # V x V bool, symmetric, zero diagonal
    semiring: Optional[FiniteSemiring] = None
    index: dict[int, int] = field(default_factory=dict)  # rank -> vertex index
    _dist: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {m.rank: k for k, m in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return int(self.adj.sum()) // 2

    def neighbors(self, v: int) -> set[int]:
        return set(np.flatnonzero(self.adj[v]).tolist())

    def vertex_of(self, m: SMatrix) -> int:
        return self.index[m.rank]

    @property
    def distances(self) -> np.ndarray:
        if self._dist is None:
            self._dist = all_pairs_distances(self)
        return self._dist


def graph_from_adjacency(adj, labels=None) -> ZeroDivisorGraph:
    """Wrap an arbitrary symmetric 0/1 matrix as a graph (used for fixtures)."""
    a = np.array(adj, dtype=bool)
    if a.shape[0] != a.shape[1] or (a != a.T).any() or a.diagonal().any():
        raise ValueError("adjacency must be square, symmetric and loop-free")
    V = a.shape[0]
    verts = [SMatrix(1, max(V, 2), (k,)) for k in range(V)] if labels is None else labels
    return ZeroDivisorGraph(n=1, q=max(V, 2), vertices=verts, adj=a)


def build_graph(S: FiniteSemiring, n: int, cap: int = DEFAULT_CAP,
                vertex_cap: int = DEFAULT_VERTEX_CAP) -> ZeroDivisorGraph:
    """Build the zero-divisor graph of M_n(S).

    AB = 0 over an entire antiring exactly when the nonzero columns of A
    miss the nonzero rows of B, so adjacency is computed once per pair of
    (row support, column support) keys and broadcast to the vertices.
    """
    vertices = [m for m in all_matrices(n, S.order, cap)
                if not m.is_zero() and is_zero_divisor(m)]
    if len(vertices) > vertex_cap:
        raise BudgetExceeded(
            f"graph has {len(vertices)} vertices; vertex cap is {vertex_cap}")
    keys: dict[tuple[int, int], int] = {}
    cls = np.empty(len(vertices), dtype=np.int64)
    for k, m in enumerate(vertices):
        cls[k] = keys.setdefault((m.row_mask, m.col_mask), len(keys))
    rmask = np.array([r for r, _ in keys], dtype=np.int64)
    cmask = np.array([c for _, c in keys], dtype=np.int64)
    # kills[a, b]: every A of key a and B of key b satisfy AB = 0
    kills = (cmask[:, None] & rmask[None, :]) == 0
    adj = kills[np.ix_(cls, cls)]
    adj = adj | adj.T
    np.fill_diagonal(adj, False)
    return ZeroDivisorGraph(n=n, q=S.order, vertices=vertices, adj=adj, semiring=S)


def distances_from(G: ZeroDivisorGraph, v: int) -> np.ndarray:
    """Single-source BFS; unreachable vertices get ``INF``."""
    dist = np.full(len(G), INF, dtype=np.uint8)
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in np.flatnonzero(G.adj[u]):
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distances(G: ZeroDivisorGraph) -> np.ndarray:
    """All-pairs BFS, one level for every source at a time."""
    V = len(G)
    dist = np.full((V, V), INF, dtype=np.uint8)
    frontier = np.eye(V, dtype=bool)
    seen = frontier.copy()
    dist[frontier] = 0
    level = 0
    while frontier.any():
        level += 1
        if level >= INF:
            raise OverflowError("distance exceeds 8-bit storage")
        frontier = (frontier @ G.adj) & ~seen
        dist[frontier] = level
        seen |= frontier
    return dist


def is_connected(G: ZeroDivisorGraph) -> bool:
    return len(G) == 0 or bool((distances_from(G, 0) != INF).all())


def diameter(G: ZeroDivisorGraph) -> int:
    D = G.distances
    if (D == INF).any():
        raise DisconnectedGraphError("graph is disconnected; diameter is infinite")
    return int(D.max()) if len(G) else 0


@dataclass
class TwinPartition:
    """Maximal twin blocks; ``kinds[k]`` is 'open', 'closed' or 'single'."""

    blocks: list[tuple[int, ...]]
    kinds: list[str]

    def block_of(self) -> dict[int, int]:
        return {v: b for b, blk in enumerate(self.blocks) for v in blk}

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for blk in self.blocks:
            out[len(blk)] = out.get(len(blk), 0) + 1
        return dict(sorted(out.items()))


def twin_classes(G: ZeroDivisorGraph) -> TwinPartition:
    """Group vertices with equal open or equal closed neighbourhoods.

    Open and closed twin groups never overlap (a vertex with an open twin
    has no closed twin), so the union of both groupings is a partition.
    """
    V = len(G)
    open_groups: dict[bytes, list[int]] = {}
    closed_groups: dict[bytes, list[int]] = {}
    for v in range(V):
        row = G.adj[v]
        open_groups.setdefault(np.packbits(row).tobytes(), []).append(v)
        closed = row.copy()
        closed[v] = True
        closed_groups.setdefault(np.packbits(closed).tobytes(), []).append(v)

    owner = [-1] * V
    blocks: list[tuple[int, ...]] = []
    kinds: list[str] = []
    for kind, groups in (("open", open_groups), ("closed", closed_groups)):
        for members in groups.values():
            if len(members) < 2:
                continue
            if any(owner[v] != -1 for v in members):
                raise AssertionError("open and closed twin groups overlap")
            for v in members:
                owner[v] = len(blocks)
            blocks.append(tuple(members))
            kinds.append(kind)
    for v in range(V):
        if owner[v] == -1:
            blocks.append((v,))
            kinds.append("single")
    order = sorted(range(len(blocks)), key=lambda b: blocks[b][0])
    return TwinPartition([blocks[b] for b in order], [kinds[b] for b in order])


def to_dot(G: ZeroDivisorGraph, name: str = "zd") -> str:
    lines = [f"graph {name} {{"]
    for k, m in enumerate(G.vertices):
        lines.append(f'  {k} [label="{m.text()}"];')
    us, vs = np.nonzero(np.triu(G.adj, 1))
    for u, v in zip(us.tolist(), vs.tolist()):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def distance_csv(G: ZeroDivisorGraph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    ranks = [m.rank for m in G.vertices]
    w.writerow(["rank"] + ranks)
    for r, row in zip(ranks, G.distances.tolist()):
        w.writerow([r] + row)
    return buf.getvalue()
