"""Edge-disjoint path counts, Gomory-Hu trees, flow capacity, load and load effect.

All edges have unit capacity, so the maximum s-t flow equals the number of
pairwise edge-disjoint s-t paths.  Flow capacity with respect to a key vertex
sums that count over every unordered pair of other vertices; it is obtained
from a single Gomory-Hu tree (n-1 max-flow computations) rather than from
n^2 independent flows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from lomax import _kernels
from lomax.errors import InvalidArgumentError, PreconditionError
from lomax.graph import Graph, VertexSet, as_vertex_set, is_connected


def _require(g: Graph, *vs: int) -> None:
    for v in vs:
        if v not in g:
            raise InvalidArgumentError(f"unknown vertex id {v!r}")


def max_flow(g: Graph, s: int, t: int) -> int:
    """Maximum number of pairwise edge-disjoint s-t paths (0 if disconnected)."""
    _require(g, s, t)
    if s == t:
        raise InvalidArgumentError("source and sink must differ")
    value, _, _ = _kernels.max_flow(*g.arrays, s, t)
    return int(value)


def _decompose(g: Graph, flow: np.ndarray, s: int, t: int, value: int) -> list[list[int]]:
    indptr, indices, _, _ = g.arrays
    out: dict[int, list[int]] = {}
    for u in g:
        for a in range(indptr[u], indptr[u + 1]):
            if flow[a] == 1:
                out.setdefault(u, []).append(int(indices[a]))
    paths = []
    for _ in range(value):
        path = [s]
        pos = {s: 0}
        u = s
        while u != t:
            v = out[u].pop()
            if v in pos:
                # drop the circulation just closed
                for w in path[pos[v] + 1 :]:
                    del pos[w]
                del path[pos[v] + 1 :]
            else:
                pos[v] = len(path)
                path.append(v)
            u = v
        paths.append(path)
    return paths


def edge_disjoint_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    """A maximum set of edge-disjoint s-t paths, each as a vertex sequence."""
    _require(g, s, t)
    if s == t:
        raise InvalidArgumentError("source and sink must differ")
    value, flow, _ = _kernels.max_flow(*g.arrays, s, t)
    return _decompose(g, flow, s, t, int(value))


@dataclass(frozen=True)
class GomoryHuTree:
    """Cut tree: removing the edge ``(v, parent[v])`` splits the vertex set
    into a minimum cut of value ``cut_value[v]`` between its endpoints."""

    root: int
    parent: dict[int, int]
    cut_value: dict[int, int]
    flow_paths: dict[int, list[list[int]]] | None = field(default=None, compare=False)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.parent) | {self.root}

    def edges(self) -> list[tuple[int, int, int]]:
        return [(v, p, self.cut_value[v]) for v, p in sorted(self.parent.items())]

    def _path_to_root(self, v: int) -> list[int]:
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def query(self, s: int, t: int) -> int:
        """Minimum edge weight on the tree path s..t (= max flow between them)."""
        if s == t:
            raise InvalidArgumentError("source and sink must differ")
        if s not in self.vertices or t not in self.vertices:
            raise InvalidArgumentError("vertex not in tree")
        up_s = self._path_to_root(s)
        on_s = {v: i for i, v in enumerate(up_s)}
        best = None
        v = t
        while v not in on_s:
            w = self.cut_value[v]
            best = w if best is None else min(best, w)
            v = self.parent[v]
        for u in up_s[: on_s[v]]:
            w = self.cut_value[u]
            best = w if best is None else min(best, w)
        return best

    def side(self, v: int) -> frozenset[int]:
        """Vertices on v's side once the tree edge ``(v, parent[v])`` is removed."""
        if v not in self.parent:
            raise InvalidArgumentError(f"{v!r} has no parent edge")
        children: dict[int, list[int]] = {}
        for c, p in self.parent.items():
            children.setdefault(p, []).append(c)
        out, stack = set(), [v]
        while stack:
            u = stack.pop()
            out.add(u)
            stack.extend(children.get(u, ()))
        return frozenset(out)


def gomory_hu(g: Graph, with_paths: bool = False) -> GomoryHuTree:
    """Gomory-Hu cut tree of a connected graph, built with n-1 max flows.

    With ``with_paths`` each tree edge also carries a maximum set of
    edge-disjoint paths between its endpoints.
    """
    if g.n == 0:
        raise PreconditionError("empty graph has no Gomory-Hu tree")
    if not is_connected(g):
        raise PreconditionError("Gomory-Hu tree requires a connected graph")
    parent_arr, weight_arr = _kernels.gusfield(*g.arrays)
    root = min(g.vertices)
    parent = {v: int(parent_arr[v]) for v in g if v != root}
    cut = {v: int(weight_arr[v]) for v in parent}
    paths = None
    if with_paths:
        paths = {v: edge_disjoint_paths(g, v, p) for v, p in parent.items()}
    return GomoryHuTree(root, parent, cut, paths)


def flow_capacity(g: Graph, k: int) -> int:
    """Z_k(G): edge-disjoint path counts summed over unordered pairs avoiding k."""
    _require(g, k)
    return int(_kernels.flow_capacity(*g.arrays, k))


def load(g: Graph, k: int) -> int:
    """Number of edge-disjoint paths among non-key pairs lost when k is deleted."""
    _require(g, k)
    return int(_kernels.load(*g.arrays, k))


def load_effect(g: Graph, k: int, s: Iterable[int], base_load: int | None = None) -> int:
    """Change in k's load caused by deleting ``s``; positive means flow was diverted onto k.

    ``base_load`` may pass a precomputed ``load(g, k)``.
    """
    _require(g, k)
    members = as_vertex_set(g, s)
    if k in members:
        raise InvalidArgumentError("the key vertex cannot be deleted")
    if not members:
        return 0
    if base_load is None:
        base_load = load(g, k)
    return load(g.without(members), k) - base_load


@dataclass
class LoadReport:
    key: int
    z_base: int
    z_without_key: int
    effects: dict[VertexSet, int] = field(default_factory=dict)

    @property
    def load(self) -> int:
        return self.z_base - self.z_without_key


def load_report(g: Graph, k: int, candidates: Iterable[Iterable[int]] = ()) -> LoadReport:
    """Z_k terms for ``g`` plus the load effect of each candidate subset."""
    z_base = flow_capacity(g, k)
    z_without = int(_kernels.flow_capacity(*g.without([k]).arrays, -1))
    report = LoadReport(k, z_base, z_without)
    for cand in candidates:
        members = as_vertex_set(g, cand)
        report.effects[members] = load_effect(g, k, members, base_load=report.load)
    return report
