"""Immutable simple undirected graphs with id-stable vertex deletion.

A graph stores its adjacency once, in CSR form, together with a boolean
``alive`` mask over the vertex id space.  Deleting vertices produces a new
graph that shares the CSR arrays and only carries a different mask, so the
thousands of deletion variants evaluated by the solvers stay cheap and keep
the original vertex ids.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from lomax.errors import InvalidArgumentError

VertexSet = tuple[int, ...]


class _Csr:
    __slots__ = ("indptr", "indices", "rev", "size")

    def __init__(self, size: int, edges: np.ndarray):
        m = len(edges)
        src = np.concatenate([edges[:, 0], edges[:, 1]]) if m else np.empty(0, np.int64)
        dst = np.concatenate([edges[:, 1], edges[:, 0]]) if m else np.empty(0, np.int64)
        order = np.lexsort((dst, src))
        inv = np.empty_like(order)
        inv[order] = np.arange(2 * m)
        partner = np.concatenate([np.arange(m, 2 * m), np.arange(m)])
        self.indices = np.ascontiguousarray(dst[order], dtype=np.int64)
        # rev[a] is the arc running opposite to arc a
        self.rev = np.ascontiguousarray(inv[partner[order]], dtype=np.int64)
        self.indptr = np.zeros(size + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=size), out=self.indptr[1:])
        self.size = size


def _normalize_edges(size: int, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise InvalidArgumentError(f"self-loop at vertex {u}")
        if not (0 <= u < size and 0 <= v < size):
            raise InvalidArgumentError(f"edge ({u}, {v}) references an unknown vertex")
        seen.add((u, v) if u < v else (v, u))
    if not seen:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(sorted(seen), dtype=np.int64)


class Graph:
    """Simple undirected graph over integer vertex ids.

    ``Graph(n, edges)`` builds a graph on vertices ``0..n-1``.  Parallel
    edges given in the input are merged; self-loops are rejected.
    """

    __slots__ = ("_csr", "_alive", "_vertices", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidArgumentError("vertex count must be non-negative")
        self._init(_Csr(n, _normalize_edges(n, edges)), np.ones(n, dtype=np.bool_))

    def _init(self, csr: _Csr, alive: np.ndarray) -> None:
        alive.setflags(write=False)
        self._csr = csr
        self._alive = alive
        self._vertices = frozenset(np.flatnonzero(alive).tolist())
        self._adj: dict[int, frozenset[int]] | None = None
        self._edges: frozenset[tuple[int, int]] | None = None

    @classmethod
    def _view(cls, csr: _Csr, alive: np.ndarray) -> Graph:
        g = cls.__new__(cls)
        g._init(csr, alive)
        return g

    @classmethod
    def from_vertices(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> Graph:
        """Graph on an arbitrary set of non-negative ids (not renumbered)."""
        vs = sorted({int(v) for v in vertices})
        if vs and vs[0] < 0:
            raise InvalidArgumentError("vertex ids must be non-negative")
        size = vs[-1] + 1 if vs else 0
        arr = _normalize_edges(size, edges)
        alive = np.zeros(size, dtype=np.bool_)
        alive[vs] = True
        if len(arr) and not (alive[arr[:, 0]].all() and alive[arr[:, 1]].all()):
            raise InvalidArgumentError("edge references a vertex outside the vertex set")
        return cls._view(_Csr(size, arr), alive)

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def id_space(self) -> int:
        """One past the largest vertex id this graph's arrays can hold."""
        return self._csr.size

    @property
    def alive(self) -> np.ndarray:
        return self._alive

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, rev, alive)`` for the compiled flow kernels."""
        c = self._csr
        return c.indptr, c.indices, c.rev, self._alive

    def _adjacency(self) -> dict[int, frozenset[int]]:
        if self._adj is None:
            c, alive = self._csr, self._alive
            adj = {}
            for v in sorted(self._vertices):
                nbrs = c.indices[c.indptr[v] : c.indptr[v + 1]]
                adj[v] = frozenset(nbrs[alive[nbrs]].tolist())
            self._adj = adj
        return self._adj

    def adj(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self.adj(v))

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        if self._edges is None:
            self._edges = frozenset(
                (u, v) for u, nbrs in self._adjacency().items() for v in nbrs if u < v
            )
        return self._edges

    @property
    def number_of_edges(self) -> int:
        return len(self.edges)

    def _check(self, v: int) -> None:
        if v not in self._vertices:
            raise InvalidArgumentError(f"unknown vertex id {v!r}")

    def __contains__(self, v: object) -> bool:
        return v in self._vertices

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._vertices))

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self._vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.number_of_edges})"

    # -- derived graphs ------------------------------------------------

    def without(self, s: Iterable[int]) -> Graph:
        """Copy of this graph with the vertices in ``s`` (and their edges) removed."""
        members = as_vertex_set(self, s)
        if not members:
            return self
        alive = self._alive.copy()
        alive[list(members)] = False
        return Graph._view(self._csr, alive)

    def induced(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        return self.without(v for v in self._vertices if v not in keep)


def as_vertex_set(g: Graph, s: Iterable[int]) -> VertexSet:
    """Canonical (sorted, duplicate-free) vertex set, validated against ``g``."""
    members = tuple(sorted({int(v) for v in s}))
    for v in members:
        g._check(v)
    return members


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    return g.without(s)


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex reachable from it."""
    g._check(source)
    adj = g._adjacency()
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest vertex id."""
    seen: set[int] = set()
    out = []
    for v in g:
        if v not in seen:
            comp = frozenset(bfs_distances(g, v))
            seen |= comp
            out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(bfs_distances(g, min(g.vertices))) == g.n


# -- edge-list text format ---------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; ``#`` starts a comment line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise InvalidArgumentError(f"line {lineno}: expected header 'n <count>'")
            n = _parse_int(parts[1], lineno)
            continue
        if len(parts) != 2:
            raise InvalidArgumentError(f"line {lineno}: expected 'u v'")
        edges.append((_parse_int(parts[0], lineno), _parse_int(parts[1], lineno)))
    if n is None:
        raise InvalidArgumentError("missing 'n <count>' header")
    return Graph(n, edges)


def _parse_int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise InvalidArgumentError(f"line {lineno}: {token!r} is not a vertex id")
    return int(token)


def format_edge_list(g: Graph) -> str:
    if g.vertices != frozenset(range(g.n)):
        raise InvalidArgumentError("edge-list format requires dense ids 0..n-1")
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))
