"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
from collections import deque

from lomax.graph import Graph


def cut_max_flow(g: Graph, s: int, t: int) -> int:
    """Menger by enumeration: smallest edge cut over every vertex set holding s but not t."""
    others = sorted(g.vertices - {s, t})
    edges = list(g.edges)
    best = len(edges)
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            side = {s, *extra}
            best = min(best, sum(1 for u, v in edges if (u in side) != (v in side)))
    return best


def augmenting_max_flow(g: Graph, s: int, t: int) -> int:
    """Plain Edmonds-Karp on a dict residual graph, unit capacity in both directions."""
    cap = {}
    for u, v in g.edges:
        cap[(u, v)] = cap.get((u, v), 0) + 1
        cap[(v, u)] = cap.get((v, u), 0) + 1
    nbrs = {v: list(g.adj(v)) for v in g}
    value = 0
    while True:
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in prev and cap[(u, w)] > 0:
                    prev[w] = u
                    queue.append(w)
        if t not in prev:
            return value
        v = t
        while prev[v] is not None:
            u = prev[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        value += 1


def flow_capacity(g: Graph, k: int, flow=augmenting_max_flow) -> int:
    others = sorted(g.vertices - {k})
    return sum(flow(g, a, b) for a, b in itertools.combinations(others, 2))


def load(g: Graph, k: int, flow=augmenting_max_flow) -> int:
    return flow_capacity(g, k, flow) - flow_capacity(g.without([k]), -1, flow)


def load_effect(g: Graph, k: int, s, flow=augmenting_max_flow) -> int:
    return load(g.without(s), k, flow) - load(g, k, flow)


def shortest_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    """Every shortest s-t path, by depth-limited enumeration."""
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    if t not in dist:
        return []
    out = []

    def walk(path):
        u = path[-1]
        if u == t:
            out.append(list(path))
            return
        for w in sorted(g.adj(u)):
            if dist.get(w) == dist[u] + 1 and len(path) <= dist[t]:
                path.append(w)
                walk(path)
                path.pop()

    walk([s])
    return [p for p in out if len(p) == dist[t] + 1]


def betweenness(g: Graph, v: int) -> int:
    total = 0
    for a, b in itertools.combinations(sorted(g.vertices - {v}), 2):
        total += sum(1 for p in shortest_paths(g, a, b) if v in p[1:-1])
    return total


def best_subset(g: Graph, k: int, max_size: int) -> tuple[int, list[tuple[int, ...]]]:
    """Largest load effect over all subsets of size 0..max_size, and every subset achieving it.

    The empty subset (effect 0) counts: an all-dummy GA solution encodes it.
    """
    from lomax.flow import load as fast_load

    base = fast_load(g, k)
    best, winners = None, []
    others = sorted(g.vertices - {k})
    for r in range(max_size + 1):
        for s in itertools.combinations(others, r):
            e = fast_load(g.without(s), k) - base if s else 0
            if best is None or e > best:
                best, winners = e, [s]
            elif e == best:
                winners.append(s)
    return best, winners
