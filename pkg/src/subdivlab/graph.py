"""Simple connected graphs and the q-subdivision operation.

Node labels are integers ``0..n-1``. Edges are stored as ``(min, max)`` pairs
in lexicographic order, and every matrix or index map in the package is
derived from that order. After ``q_subdivide`` the old nodes keep their labels
and the new node created on edge ``j`` in copy ``f`` (``1 <= f <= q``) gets
label ``n + (f - 1) * m + j``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    GraphError,
    IndexOutOfRangeError,
    SelfLoopError,
    SizeLimitError,
)

DEFAULT_MAX_NODES = 20_000


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=True)
class Graph:
    """Simple connected undirected graph with a canonical edge order.

    Use :func:`build_graph` to construct one from user input; the raw
    constructor trusts its arguments.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            np.add.at(d, e[:, 0], 1)
            np.add.at(d, e[:, 1], 1)
        return _frozen(d)

    @cached_property
    def edge_array(self) -> np.ndarray:
        return _frozen(np.asarray(self.edges, dtype=np.int64).reshape(-1, 2))

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        e = self.edge_array
        A[e[:, 0], e[:, 1]] = 1.0
        A[e[:, 1], e[:, 0]] = 1.0
        return A

    def laplacian_matrix(self) -> np.ndarray:
        return np.diag(self.degrees.astype(float)) - self.adjacency_matrix()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Bipartition(NamedTuple):
    is_bipartite: bool
    color: tuple[int, ...] | None


class Parent(NamedTuple):
    s: int
    t: int
    copy: int
    edge_index: int


@dataclass(frozen=True)
class SubdivisionMap:
    """Bookkeeping that ties each new node of S_q(G) to its parent edge in G."""

    q: int
    old_count: int
    base_edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.base_edges)

    @property
    def new_count(self) -> int:
        return self.m * self.q

    @property
    def total_count(self) -> int:
        return self.old_count + self.new_count

    def is_new(self, x: int) -> bool:
        return self.old_count <= x < self.total_count

    def node_index(self, copy: int, edge_index: int) -> int:
        """Label of the new node on ``edge_index`` in copy ``copy`` (1-based)."""
        if not 1 <= copy <= self.q:
            raise IndexOutOfRangeError(f"copy {copy} outside [1, {self.q}]")
        if not 0 <= edge_index < self.m:
            raise IndexOutOfRangeError(f"edge index {edge_index} outside [0, {self.m})")
        return self.old_count + (copy - 1) * self.m + edge_index

    def parent(self, x: int) -> Parent:
        if not self.is_new(x):
            raise IndexOutOfRangeError(
                f"node {x} is not a new node (new labels are "
                f"{self.old_count}..{self.total_count - 1})"
            )
        f, j = divmod(x - self.old_count, self.m)
        s, t = self.base_edges[j]
        return Parent(s, t, f + 1, j)

    @cached_property
    def parent_array(self) -> np.ndarray:
        """``(mq, 2)`` array of parent endpoints, row ``x - n`` for new node ``x``."""
        e = np.asarray(self.base_edges, dtype=np.int64).reshape(-1, 2)
        return _frozen(np.tile(e, (self.q, 1)))

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "old_count": self.old_count,
            "new_count": self.new_count,
            "parents": [
                {"node": self.old_count + f * self.m + j, "s": s, "t": t,
                 "copy": f + 1, "edge_index": j}
                for f in range(self.q)
                for j, (s, t) in enumerate(self.base_edges)
            ],
        }


def _is_connected(n: int, neighbors: Sequence[Sequence[int]]) -> bool:
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == n


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` and return the canonical :class:`Graph`.

    Raises
    ------
    SelfLoopError, DuplicateEdgeError, IndexOutOfRangeError, DisconnectedError
    """
    n = int(n)
    if n < 2:
        raise GraphError(f"need at least 2 nodes, got {n}")
    canon = []
    seen = set()
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRangeError(f"edge ({u}, {v}) has a node outside [0, {n})")
        if u == v:
            raise SelfLoopError(f"self-loop at node {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
        canon.append(e)
    canon.sort()
    g = Graph(n, tuple(canon))
    if not _is_connected(n, g.neighbors):
        raise DisconnectedError(f"graph on {n} nodes with {len(canon)} edges is not connected")
    return g


def bipartition(g: Graph) -> Bipartition:
    """BFS two-colouring from node 0."""
    color = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    nbrs = g.neighbors
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if color[v] < 0:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                return Bipartition(False, None)
    return Bipartition(True, tuple(color))


def incidence_matrix(g: Graph) -> np.ndarray:
    """n x m node-edge incidence matrix with columns in canonical edge order."""
    B = np.zeros((g.n, g.m))
    cols = np.arange(g.m)
    e = g.edge_array
    B[e[:, 0], cols] = 1.0
    B[e[:, 1], cols] = 1.0
    return B


def predicted_size(n: int, m: int, q: int, k: int) -> tuple[int, int]:
    """Node and edge counts of the k-fold q-subdivision of an (n, m) graph."""
    r = (2 * q) ** k
    return m * q * (r - 1) // (2 * q - 1) + n, r * m


def q_subdivide(g: Graph, q: int) -> tuple[Graph, SubdivisionMap]:
    """Replace every edge ``st`` with ``q`` parallel paths ``s - x - t``."""
    q = int(q)
    if q < 1:
        raise ValueError(f"q must be a positive integer, got {q}")
    n, m = g.n, g.m
    x = n + np.arange(m * q)
    st = np.tile(g.edge_array, (q, 1))
    new_edges = np.concatenate(
        [np.column_stack([st[:, 0], x]), np.column_stack([st[:, 1], x])]
    )
    order = np.lexsort((new_edges[:, 1], new_edges[:, 0]))
    edges = tuple(map(tuple, new_edges[order].tolist()))
    return Graph(n + m * q, edges), SubdivisionMap(q, n, g.edges)


def iterate_subdivide_with_map(
    g: Graph, q: int, k: int, max_nodes: int = DEFAULT_MAX_NODES
) -> tuple[Graph, SubdivisionMap | None]:
    """Like :func:`iterate_subdivide`, also returning the last step's map (None when k = 0)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    n_pred, m_pred = predicted_size(g.n, g.m, q, k)
    if n_pred > max_nodes:
        raise SizeLimitError(
            f"S_{{{q},{k}}} would have {n_pred} nodes, above the cap of {max_nodes}"
        )
    h, smap = g, None
    for _ in range(k):
        h, smap = q_subdivide(h, q)
    assert h.n == n_pred and h.m == m_pred, "iterated subdivision counts disagree"
    return h, smap


def iterate_subdivide(g: Graph, q: int, k: int, max_nodes: int = DEFAULT_MAX_NODES) -> Graph:
    """Apply ``q_subdivide`` ``k`` times; refuses results above ``max_nodes``."""
    return iterate_subdivide_with_map(g, q, k, max_nodes)[0]
