import sys
from pathlib import Path

import numpy as np
from hypothesis import strategies as st

from lomax.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))


def random_connected(rng: np.random.Generator, n: int, extra_p: float) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = {(int(rng.integers(v)), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_p:
                edges.add((u, v))
    perm = rng.permutation(n)
    return Graph(n, [(int(perm[u]), int(perm[v])) for u, v in edges])


def random_tree(rng: np.random.Generator, n: int) -> Graph:
    return random_connected(rng, n, 0.0)


@st.composite
def connected_graphs(draw, min_n=2, max_n=9):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    edges = {(p, v) for v, p in zip(range(1, n), parents)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    return Graph(n, edges | set(extra))


def bridge_graph(s: int, p: int):
    """Two dense halves joined by one bridge, built so deleting i costs k exactly s*p.

    k sits in a triangle {k, x, a} and is the only way out for a clique Q of
    s vertices; i sits in a triangle {i, y, b} and is the only way in for a
    clique P of p - 1 vertices; the bridge is x-y.  Returns (graph, k, i).
    """
    k, x, a, i, y, b = range(6)
    edges = [(k, x), (k, a), (x, a), (i, y), (i, b), (y, b), (x, y)]
    q = list(range(6, 6 + s))
    pv = list(range(6 + s, 6 + s + p - 1))
    clique_q = [k] + q
    clique_p = [i] + pv
    for grp in (clique_q, clique_p):
        edges += [(u, v) for j, u in enumerate(grp) for v in grp[j + 1 :]]
    return Graph(6 + s + p - 1, edges), k, i


def twin_hub_graph(clique: int = 6):
    """Two K_clique joined only through hubs k and i, each adjacent to every clique vertex.

    Deleting i forces every cross pair through k, so i is the single
    positive-effect vertex.  Returns (graph, k, i).
    """
    a = list(range(clique))
    b = list(range(clique, 2 * clique))
    k, i = 2 * clique, 2 * clique + 1
    edges = [(u, v) for grp in (a, b) for j, u in enumerate(grp) for v in grp[j + 1 :]]
    edges += [(hub, v) for hub in (k, i) for v in a + b]
    return Graph(2 * clique + 2, edges), k, i


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: float(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
