"""Seeded random graph families and a few fixed shapes used throughout the tests.

Every random family returns a connected simple graph on ids ``0..n-1``.  A
disconnected draw is regenerated from a sub-seed derived from the spec seed
and the attempt number, up to :data:`MAX_ATTEMPTS` times.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from lomax.errors import GenerationError, InvalidArgumentError, PreconditionError
from lomax.graph import Graph, bfs_distances, is_connected

MAX_ATTEMPTS = 100

# Holme-Kim triad-formation probability; 0.42 gives mean clustering ~0.38 at n=100, m0=m=2
HOLME_KIM_TRIAD_P = 0.42

FAMILIES = {
    "erdos_renyi": "er",
    "watts_strogatz": "ws",
    "barabasi_albert": "ba",
    "holme_kim": "hk",
    "centralized_power_law": "cpl",
}
_SHORT = {v: k for k, v in FAMILIES.items()}

_PARAMS = {
    "erdos_renyi": {"p": float},
    "watts_strogatz": {"k": int, "p": float},
    "barabasi_albert": {"m0": int, "m": int},
    "holme_kim": {"m0": int, "m": int, "pt": float},
    "centralized_power_law": {"a": int, "b": int, "c": int, "maxe": int},
}


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        family = _SHORT.get(self.family, self.family)
        if family not in _PARAMS:
            raise InvalidArgumentError(f"unknown graph family {self.family!r}")
        object.__setattr__(self, "family", family)
        unknown = set(self.params) - set(_PARAMS[family])
        if unknown:
            raise InvalidArgumentError(f"unknown parameters for {family}: {sorted(unknown)}")
        _validate(family, self.n, self.params)

    def with_seed(self, seed: int) -> GeneratorSpec:
        return GeneratorSpec(self.family, self.n, dict(self.params), seed)

    @property
    def label(self) -> str:
        """Spec string without the seed, e.g. ``er:n=100,p=0.1``."""
        parts = [f"n={self.n}"] + [f"{k}={v}" for k, v in self.params.items()]
        return f"{FAMILIES[self.family]}:" + ",".join(parts)


def _validate(family: str, n: int, params: dict) -> None:
    def need(key):
        if key not in params:
            raise InvalidArgumentError(f"{family} requires parameter {key!r}")
        return params[key]

    if n < 3:
        raise InvalidArgumentError("graphs need at least 3 vertices")
    if family in ("erdos_renyi", "watts_strogatz"):
        p = need("p")
        if not 0.0 <= p <= 1.0:
            raise InvalidArgumentError("probability must lie in [0, 1]")
    if family == "watts_strogatz":
        k = need("k")
        if not 1 <= k or 2 * k >= n:
            raise InvalidArgumentError("ring degree 2k must satisfy 2 <= 2k < n")
    if family in ("barabasi_albert", "holme_kim"):
        m0, m = need("m0"), need("m")
        if not 1 <= m <= m0 or m0 > n:
            raise InvalidArgumentError("preferential attachment needs 1 <= m <= m0 <= n")
        if not 0.0 <= params.get("pt", HOLME_KIM_TRIAD_P) <= 1.0:
            raise InvalidArgumentError("triad probability must lie in [0, 1]")
    if family == "centralized_power_law":
        a, b, c, maxe = need("a"), need("b"), need("c"), need("maxe")
        if b < 1 or c < 0 or a - c < b:
            raise InvalidArgumentError("need b >= 1 and a - c >= b so every satellite has a leader")
        if a < 3 or a >= n:
            raise InvalidArgumentError("leadership group needs 3 <= a < n")
        if maxe < 1:
            raise InvalidArgumentError("maxe must be at least 1")


def parse_spec(text: str, seed: int = 0) -> GeneratorSpec:
    """Parse ``family:key=value,...`` (e.g. ``cpl:n=100,a=15,b=3,c=0,maxe=4``)."""
    family, _, rest = text.strip().partition(":")
    family = _SHORT.get(family, family)
    if family not in _PARAMS:
        raise InvalidArgumentError(f"unknown graph family in {text!r}")
    kinds = dict(_PARAMS[family], n=int, seed=int)
    values = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, raw = item.partition("=")
        if not eq or key not in kinds:
            raise InvalidArgumentError(f"bad generator parameter {item!r}")
        try:
            values[key] = kinds[key](raw)
        except ValueError:
            raise InvalidArgumentError(f"bad value for {key}: {raw!r}") from None
    if "n" not in values:
        raise InvalidArgumentError("generator spec needs n=")
    n = values.pop("n")
    seed = values.pop("seed", seed)
    return GeneratorSpec(family, n, values, seed)


# -- families -----------------------------------------------------------


def _erdos_renyi(n, rng, p):
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return list(zip(iu[keep].tolist(), ju[keep].tolist()))


def _watts_strogatz(n, rng, k, p):
    # ring where each vertex links to its k nearest neighbours on each side
    adj = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, k + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u] or rng.random() >= p:
                continue
            choices = [w for w in range(n) if w != u and w not in adj[u]]
            if not choices:
                continue
            w = choices[rng.integers(len(choices))]
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    return [(u, v) for u in range(n) for v in adj[u] if u < v]


def _attach(rng, targets_pool, m, exclude=()):
    """Draw m distinct vertices with probability proportional to multiplicity."""
    chosen: list[int] = []
    while len(chosen) < m:
        w = targets_pool[rng.integers(len(targets_pool))]
        if w not in chosen and w not in exclude:
            chosen.append(w)
    return chosen


def _preferential(n, rng, m0, m, triad_p=None):
    edges = [(i, i + 1) for i in range(m0 - 1)]
    # each vertex appears once per incident edge
    pool = [v for e in edges for v in e] or [0]
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for v in range(m0, n):
        linked: list[int] = []
        last_pa = None
        while len(linked) < m:
            w = None
            if triad_p is not None and last_pa is not None and rng.random() < triad_p:
                options = sorted(adj[last_pa] - set(linked) - {v})
                if options:
                    w = options[rng.integers(len(options))]
            if w is None:
                w = _attach(rng, pool, 1, exclude=linked)[0]
                last_pa = w
            linked.append(w)
        for w in linked:
            edges.append((w, v))
            adj[w].add(v)
            adj[v].add(w)
            pool += [w, v]
    return edges


def _centralized_power_law(n, rng, a, b, c, maxe):
    """Return (edges, satellite_of); satellite_of[v] is -1 for unassigned leaders."""
    edges = _preferential(a, rng, 3, 2)
    degree = np.zeros(n, dtype=np.int64)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    satellite_of = np.full(n, -1, dtype=np.int64)
    members: list[list[int]] = [[] for _ in range(b)]
    for leader in range(a - c):
        satellite_of[leader] = leader % b
        members[leader % b].append(leader)
    for v in range(a, n):
        group = int(rng.integers(b))
        pool = np.array(members[group])
        want = min(int(rng.integers(1, maxe + 1)), len(pool))
        weights = degree[pool].astype(float)
        targets = rng.choice(pool, size=want, replace=False, p=weights / weights.sum())
        for w in sorted(targets.tolist()):
            edges.append((w, v))
            degree[w] += 1
            degree[v] += 1
        satellite_of[v] = group
        members[group].append(v)
    return edges, satellite_of


def _draw(spec: GeneratorSpec, rng: np.random.Generator):
    p = spec.params
    if spec.family == "erdos_renyi":
        return _erdos_renyi(spec.n, rng, p["p"])
    if spec.family == "watts_strogatz":
        return _watts_strogatz(spec.n, rng, p["k"], p["p"])
    if spec.family == "barabasi_albert":
        return _preferential(spec.n, rng, p["m0"], p["m"])
    if spec.family == "holme_kim":
        return _preferential(spec.n, rng, p["m0"], p["m"], p.get("pt", HOLME_KIM_TRIAD_P))
    return _centralized_power_law(spec.n, rng, p["a"], p["b"], p["c"], p["maxe"])[0]


def attempt_rng(seed: int, attempt: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), attempt]))


def generate(spec: GeneratorSpec) -> Graph:
    """Connected random graph drawn from ``spec``; deterministic in ``spec.seed``."""
    for attempt in range(MAX_ATTEMPTS):
        g = Graph(spec.n, _draw(spec, attempt_rng(spec.seed, attempt)))
        if is_connected(g):
            return g
    raise GenerationError(
        f"{spec.label} seed={spec.seed}: no connected graph after {MAX_ATTEMPTS} attempts"
    )


# -- fixed shapes -------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def barbell_graph(clique: int, path: int) -> Graph:
    """Two K_clique joined through ``path`` intermediate vertices."""
    left = list(itertools.combinations(range(clique), 2))
    off = clique + path
    right = [(u + off, v + off) for u, v in itertools.combinations(range(clique), 2)]
    chain = list(range(clique - 1, off + 1))
    return Graph(off + clique, left + right + list(zip(chain, chain[1:])))


# -- statistics ---------------------------------------------------------


@dataclass(frozen=True)
class GraphStats:
    density: float
    avg_path_length: float
    clustering_coefficient: float


def summarize(g: Graph) -> GraphStats:
    """Edge density, mean shortest-path length, and clustering coefficient.

    Clustering is the mean over vertices of the local coefficient (vertices
    of degree < 2 count as 0).
    """
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("summary statistics need a connected graph with >= 2 vertices")
    n, m = g.n, g.number_of_edges
    density = 2 * m / (n * (n - 1))
    total = sum(sum(bfs_distances(g, v).values()) for v in g)
    avg_path = total / (n * (n - 1))
    local = []
    for v in g:
        nbrs = sorted(g.adj(v))
        pairs = len(nbrs) * (len(nbrs) - 1) // 2
        closed = sum(1 for u, w in itertools.combinations(nbrs, 2) if w in g.adj(u))
        local.append(closed / pairs if pairs else 0.0)
    clustering = sum(local) / n
    return GraphStats(density, avg_path, clustering)
