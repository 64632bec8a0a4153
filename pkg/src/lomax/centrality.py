"""Degree, betweenness and closeness centrality, and key-vertex selection.

Betweenness here is a raw count: over unordered pairs {s, t} not containing
v, the number of shortest s-t paths passing through v.  Closeness is the mean
hop distance from v to every other vertex, so smaller means more central.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from lomax.errors import InvalidArgumentError, PreconditionError
from lomax.graph import Graph, is_connected


def _path_counts(g: Graph) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Vertex order, hop-distance matrix (-1 = unreachable) and shortest-path counts."""
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    dist = np.full((n, n), -1, dtype=np.int64)
    sigma = np.zeros((n, n), dtype=np.float64)
    adj = [[index[w] for w in g.adj(v)] for v in order]
    for s in range(n):
        d, c = dist[s], sigma[s]
        d[s] = 0
        c[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    queue.append(w)
                if d[w] == d[u] + 1:
                    c[w] += c[u]
    return order, dist, sigma


def _through(dist: np.ndarray, sigma: np.ndarray, i: int) -> float:
    reach = dist >= 0
    on_path = (
        reach[:, i][:, None]
        & reach[i, :][None, :]
        & (dist[:, i][:, None] + dist[i, :][None, :] == dist)
    )
    on_path[i, :] = False
    on_path[:, i] = False
    np.fill_diagonal(on_path, False)
    # ordered pairs, halved
    return (np.outer(sigma[:, i], sigma[i, :]) * on_path).sum() / 2


def betweenness_count(g: Graph, v: int) -> int:
    """Number of shortest paths between other vertex pairs that pass through ``v``.

    Pairs with no path between them contribute nothing, so this is also
    defined on disconnected graphs.
    """
    if v not in g:
        raise InvalidArgumentError(f"unknown vertex id {v!r}")
    order, dist, sigma = _path_counts(g)
    return int(round(_through(dist, sigma, order.index(v))))


@dataclass(frozen=True)
class CentralityTable:
    vertices: list[int]
    degree: np.ndarray
    betweenness: np.ndarray
    closeness: np.ndarray
    degree_rank: np.ndarray
    betweenness_rank: np.ndarray
    closeness_rank: np.ndarray

    @property
    def mean_rank(self) -> np.ndarray:
        return (self.degree_rank + self.betweenness_rank + self.closeness_rank) / 3

    def rows(self):
        for i, v in enumerate(self.vertices):
            yield v, int(self.degree[i]), int(self.betweenness[i]), float(self.closeness[i]), float(self.mean_rank[i])


def centrality_table(g: Graph) -> CentralityTable:
    """All three metrics with rank vectors (rank 1 = most central, ties averaged)."""
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("centralities need a connected graph with >= 2 vertices")
    order, dist, sigma = _path_counts(g)
    deg = np.array([g.degree(v) for v in order], dtype=np.int64)
    btw = np.rint([_through(dist, sigma, i) for i in range(len(order))])
    clo = dist.sum(axis=1) / (len(order) - 1)
    return CentralityTable(
        vertices=order,
        degree=deg,
        betweenness=btw,
        closeness=clo,
        degree_rank=rankdata(-deg, method="average"),
        betweenness_rank=rankdata(-btw, method="average"),
        closeness_rank=rankdata(clo, method="average"),
    )


def select_key_vertex(g: Graph) -> int:
    """Vertex with the best (smallest) mean rank over the three metrics; lowest id on ties."""
    table = centrality_table(g)
    mean = table.mean_rank
    best = np.flatnonzero(np.isclose(mean, mean.min()))
    return table.vertices[int(best[0])]


def betweenness_effect(g: Graph, k: int, i: int) -> int:
    """Change in k's betweenness count when ``i`` is deleted (diagnostic only)."""
    if i == k:
        raise InvalidArgumentError("candidate must differ from the key vertex")
    return betweenness_count(g.without([i]), k) - betweenness_count(g, k)
