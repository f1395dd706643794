"""Interaction graphs: periodic lattices and validated edge-list graphs.

Vertices are dense integer ids 0..n-1; a lattice cell (r, c) maps to
r*L + c (row-major). Adjacency is stored in CSR form with neighbor lists
in a fixed canonical order (up, down, left, right on lattices; ascending
ids for general graphs), so that sweep results are bit-for-bit
reproducible. Graphs are immutable after construction and safe to share
across concurrent runs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


class GraphValidationError(ValueError):
    """An input graph violates the simple/connected/undirected contract."""


class SelfLoopError(GraphValidationError):
    pass


class DuplicateEdgeError(GraphValidationError):
    pass


class DisconnectedGraphError(GraphValidationError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph over vertices 0..n-1 (CSR adjacency)."""

    n: int
    indptr: np.ndarray  # int64, length n+1
    indices: np.ndarray  # int32, length 2*edge_count

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def max_degree(self) -> int:
        return int(np.max(np.diff(self.indptr)))

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        """Neighbor ids of u, in the canonical stored order (read-only view)."""
        self._check_vertex(u)
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise IndexError(f"vertex {u} out of range for graph with {self.n} vertices")


def neighborhood(g: Graph, u: int) -> np.ndarray:
    """Neighbors of vertex u; stable order across calls."""
    return g.neighbors(u)


def build_periodic_lattice(side: int) -> Graph:
    """L x L torus with the four orthogonal nearest neighbors per cell.

    Neighbor order per vertex is up, down, left, right. L must be >= 2;
    L == 2 is accepted but degenerate (wrap-around duplicates merge, so
    every vertex has degree 2) and triggers a warning.
    """
    if side < 2:
        raise ValueError(f"lattice side must be >= 2, got {side}")
    n = side * side
    ids = np.arange(n, dtype=np.int64)
    r, c = ids // side, ids % side
    up = ((r - 1) % side) * side + c
    down = ((r + 1) % side) * side + c
    left = r * side + (c - 1) % side
    right = r * side + (c + 1) % side
    stacked = np.stack([up, down, left, right], axis=1)
    if side == 2:
        warnings.warn(
            "L=2 torus is degenerate: wrap-around edges coincide, vertices have degree 2",
            stacklevel=2,
        )
        stacked = stacked[:, [0, 2]]  # up==down and left==right when L==2
    deg = stacked.shape[1]
    indptr = np.arange(0, (n + 1) * deg, deg, dtype=np.int64)
    indices = stacked.ravel().astype(np.int32)
    return Graph(n=n, indptr=indptr, indices=indices)


def build_graph_from_edges(n: int, edges) -> Graph:
    """Validated graph from an explicit edge list (neighbors stored ascending).

    Raises SelfLoopError / DuplicateEdgeError / DisconnectedGraphError, each
    naming the offending vertex or edge.
    """
    if n < 2:
        raise GraphValidationError(f"graph needs at least 2 vertices, got n={n}")
    adjacency = [set() for _ in range(n)]
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop on vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        adjacency[u].add(v)
        adjacency[v].add(u)

    indptr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        indptr[u + 1] = indptr[u] + len(adjacency[u])
    indices = np.empty(indptr[-1], dtype=np.int32)
    for u in range(n):
        indices[indptr[u] : indptr[u + 1]] = sorted(adjacency[u])

    unreached = _first_unreached(n, indptr, indices)
    if unreached is not None:
        raise DisconnectedGraphError(f"graph is disconnected: vertex {unreached} unreachable from vertex 0")
    return Graph(n=n, indptr=indptr, indices=indices)


def _first_unreached(n, indptr, indices):
    # BFS from vertex 0; returns the smallest unreached vertex id, or None.
    visited = np.zeros(n, dtype=bool)
    visited[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in indices[indptr[u] : indptr[u + 1]]:
                if not visited[v]:
                    visited[v] = True
                    nxt.append(int(v))
        frontier = nxt
    if visited.all():
        return None
    return int(np.flatnonzero(~visited)[0])


def read_edge_list(path) -> Graph:
    """Parse the plain-text edge-list format.

    First non-comment line is the vertex count n; every following line is
    `u v`. Anything from `#` to end of line is ignored.
    """
    n = None
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if n is None:
                if len(fields) != 1:
                    raise ValueError(f"{path}:{lineno}: expected the vertex count, got {line!r}")
                n = _parse_int(fields[0], path, lineno)
                continue
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            edges.append((_parse_int(fields[0], path, lineno), _parse_int(fields[1], path, lineno)))
    if n is None:
        raise ValueError(f"{path}: empty edge-list file")
    return build_graph_from_edges(n, edges)


def _parse_int(token, path, lineno) -> int:
    try:
        return int(token)
    except ValueError:
        raise ValueError(f"{path}:{lineno}: not an integer: {token!r}") from None
