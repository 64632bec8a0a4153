"""Compiled unit-capacity flow kernels.

All kernels work on the CSR arrays of :class:`lomax.graph.Graph` plus an
``alive`` mask; dead vertices are skipped, which is how vertex deletion is
evaluated without rebuilding anything.  Each undirected edge is a pair of
arcs ``a`` / ``rev[a]`` with capacity 1 in both directions, so ``flow[a]``
ranges over -1..1 and an arc is residual while ``flow[a] < 1``.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def _bfs_levels(indptr, indices, alive, flow, level, queue, s, t):
    n = level.shape[0]
    for v in range(n):
        level[v] = -1
    level[s] = 0
    head = 0
    tail = 1
    queue[0] = s
    t_level = n + 1
    while head < tail:
        u = queue[head]
        head += 1
        if level[u] >= t_level:
            break
        for a in range(indptr[u], indptr[u + 1]):
            v = indices[a]
            if level[v] < 0 and flow[a] < 1 and alive[v]:
                level[v] = level[u] + 1
                if v == t:
                    t_level = level[v]
                queue[tail] = v
                tail += 1
    return level[t] >= 0


@nb.njit(cache=True)
def _dinic(indptr, indices, rev, alive, flow, level, it, queue, stack, s, t, bound):
    """Dinic's algorithm, stopping early once ``bound`` units are routed."""
    n = level.shape[0]
    for a in range(flow.shape[0]):
        flow[a] = 0
    total = 0
    while total < bound:
        if not _bfs_levels(indptr, indices, alive, flow, level, queue, s, t):
            break
        for v in range(n):
            it[v] = indptr[v]
        while total < bound:
            sp = 0
            u = s
            found = False
            while True:
                if u == t:
                    found = True
                    break
                advanced = False
                while it[u] < indptr[u + 1]:
                    a = it[u]
                    v = indices[a]
                    if flow[a] < 1 and level[v] == level[u] + 1 and alive[v]:
                        stack[sp] = a
                        sp += 1
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if sp == 0:
                        break
                    level[u] = -2  # dead end for this phase
                    sp -= 1
                    u = indices[rev[stack[sp]]]
                    it[u] += 1
            if not found:
                break
            for i in range(sp):
                a = stack[i]
                flow[a] += 1
                flow[rev[a]] -= 1
            total += 1
    return total


@nb.njit(cache=True)
def _residual_side(indptr, indices, alive, flow, side, queue, s):
    for v in range(side.shape[0]):
        side[v] = False
    side[s] = True
    head = 0
    tail = 1
    queue[0] = s
    while head < tail:
        u = queue[head]
        head += 1
        for a in range(indptr[u], indptr[u + 1]):
            v = indices[a]
            if not side[v] and flow[a] < 1 and alive[v]:
                side[v] = True
                queue[tail] = v
                tail += 1


@nb.njit(cache=True)
def max_flow(indptr, indices, rev, alive, s, t):
    """Return ``(value, flow, source_side)`` of a maximum s-t flow."""
    n = alive.shape[0]
    flow = np.zeros(indices.shape[0], np.int64)
    level = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    value = _dinic(indptr, indices, rev, alive, flow, level, it, queue, stack, s, t, indices.shape[0])
    side = np.zeros(n, np.bool_)
    _residual_side(indptr, indices, alive, flow, side, queue, s)
    return value, flow, side


@nb.njit(cache=True)
def gusfield(indptr, indices, rev, alive):
    """Gusfield's contraction-free Gomory-Hu cut tree over the alive vertices.

    Returns ``(parent, weight)``: ``parent[v]`` is v's tree parent (-1 for the
    root, the lowest alive id, and for dead vertices) and ``weight[v]`` the
    min-cut value of the tree edge ``(v, parent[v])``.  Vertices in different
    components are joined by weight-0 edges.
    """
    n = alive.shape[0]
    parent = np.full(n, -1, np.int64)
    weight = np.zeros(n, np.int64)
    flow = np.zeros(indices.shape[0], np.int64)
    level = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    side = np.zeros(n, np.bool_)
    deg = np.zeros(n, np.int64)
    root = -1
    for v in range(n):
        if alive[v]:
            if root < 0:
                root = v
            for a in range(indptr[v], indptr[v + 1]):
                if alive[indices[a]]:
                    deg[v] += 1
    if root < 0:
        return parent, weight
    for v in range(n):
        if alive[v] and v != root:
            parent[v] = root
    for s in range(n):
        if not alive[s] or s == root:
            continue
        t = parent[s]
        bound = min(deg[s], deg[t])
        f = _dinic(indptr, indices, rev, alive, flow, level, it, queue, stack, s, t, bound)
        # a flow saturating a degree bound makes the trivial cut around that endpoint minimum
        if f == deg[s]:
            for v in range(n):
                side[v] = False
            side[s] = True
        elif f == deg[t]:
            for v in range(n):
                side[v] = alive[v]
            side[t] = False
        else:
            _residual_side(indptr, indices, alive, flow, side, queue, s)
        weight[s] = f
        for i in range(n):
            if i != s and side[i] and parent[i] == t:
                parent[i] = s
        pt = parent[t]
        if pt >= 0 and side[pt]:
            parent[s] = pt
            parent[t] = s
            weight[s] = weight[t]
            weight[t] = f
    return parent, weight


@nb.njit(cache=True)
def pair_flow_sum(parent, weight, alive, exclude):
    """Sum of pairwise max flows encoded by a flow-equivalent tree.

    Pairs touching ``exclude`` (pass -1 for none) are left out.  Tree edges are
    merged in decreasing weight order; an edge of weight w joining groups of
    sizes a and b is the path minimum for exactly a*b pairs.
    """
    n = alive.shape[0]
    m = 0
    for v in range(n):
        if parent[v] >= 0:
            m += 1
    us = np.empty(m, np.int64)
    ws = np.empty(m, np.int64)
    j = 0
    for v in range(n):
        if parent[v] >= 0:
            us[j] = v
            ws[j] = weight[v]
            j += 1
    order = np.argsort(-ws, kind="mergesort")
    root = np.arange(n)
    size = np.zeros(n, np.int64)
    for v in range(n):
        if alive[v] and v != exclude:
            size[v] = 1
    total = 0
    for idx in order:
        a = us[idx]
        b = parent[a]
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        while root[b] != b:
            root[b] = root[root[b]]
            b = root[b]
        total += ws[idx] * size[a] * size[b]
        if size[a] < size[b]:
            a, b = b, a
        root[b] = a
        size[a] += size[b]
    return total


@nb.njit(cache=True)
def flow_capacity(indptr, indices, rev, alive, k):
    parent, weight = gusfield(indptr, indices, rev, alive)
    return pair_flow_sum(parent, weight, alive, k)


@nb.njit(cache=True)
def load(indptr, indices, rev, alive, k):
    """Flow capacity w.r.t. k minus the flow capacity once k is deleted."""
    with_k = flow_capacity(indptr, indices, rev, alive, k)
    without = alive.copy()
    without[k] = False
    return with_k - flow_capacity(indptr, indices, rev, without, k)
