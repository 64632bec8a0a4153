"""Single-vertex load maximization: brute force, theorem-based pruning, divide and conquer."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from lomax import _kernels
from lomax.errors import InvalidArgumentError, PreconditionError
from lomax.flow import GomoryHuTree, edge_disjoint_paths, gomory_hu, load, load_effect
from lomax.graph import Graph, is_connected

# tags recorded for each pruned vertex
DEGREE_TWO = "key-degree-2"
SINGLE_PATH = "single-path"
CUT_DETOURS = "cut-detours"


@dataclass
class SingleResult:
    key: int
    effects: dict[int, int] = field(default_factory=dict)
    eliminated: dict[int, str] = field(default_factory=dict)
    evaluations: int = 0
    base_load: int = 0

    @property
    def best(self) -> tuple[int, int] | None:
        """``(vertex, effect)`` with the largest effect, lowest id on ties."""
        if not self.effects:
            return None
        v = min(self.effects, key=lambda u: (-self.effects[u], u))
        return v, self.effects[v]


def _check(g: Graph, k: int) -> None:
    if k not in g:
        raise InvalidArgumentError(f"unknown key vertex {k!r}")
    if not is_connected(g):
        raise PreconditionError("Single-LOMAX expects a connected graph")


def brute_force(g: Graph, k: int, candidates: Iterable[int] | None = None) -> SingleResult:
    """Load effect of deleting each candidate (default: every vertex but k)."""
    _check(g, k)
    base = load(g, k)
    result = SingleResult(key=k, base_load=base)
    todo = sorted(g.vertices - {k}) if candidates is None else sorted(set(candidates) - {k})
    for i in todo:
        result.effects[i] = load_effect(g, k, [i], base_load=base)
        result.evaluations += 1
    return result


# -- vertex elimination -------------------------------------------------


def _boundary(g: Graph, side: frozenset[int]) -> list[int]:
    return sorted(v for v in side if any(w not in side for w in g.adj(v)))


def _hub_flows_ok(g: Graph, alive: np.ndarray, boundary: list[int], need: int) -> bool:
    """Whether the first boundary vertex reaches every other one with >= need disjoint paths."""
    if need == 0 or len(boundary) < 2:
        return True
    indptr, indices, rev, _ = g.arrays
    hub = boundary[0]
    for other in boundary[1:]:
        value, _, _ = _kernels.max_flow(indptr, indices, rev, alive, hub, other)
        if value < need:
            return False
    return True


def _mask(g: Graph, members: Iterable[int]) -> np.ndarray:
    alive = np.zeros(g.id_space, dtype=np.bool_)
    alive[list(members)] = True
    return alive


def eliminate_by_theorems(
    g: Graph, k: int, max_cut: int = 5, tree: GomoryHuTree | None = None
) -> dict[int, str]:
    """Vertices whose deletion provably cannot raise k's load, each with the rule used.

    * key of degree 2: both neighbours of k;
    * a single edge-disjoint path to k (read off the Gomory-Hu tree);
    * for each tree cut C with ``|C| <= max_cut`` and k off its boundary:
      when boundary vertices on both sides stay ``|C| // 2``-connected inside
      their side (minus k on k's side), every non-boundary vertex on the far
      side whose deletion keeps that connectivity.
    """
    if max_cut < 1:
        raise InvalidArgumentError("max_cut must be at least 1")
    _check(g, k)
    out: dict[int, str] = {}
    if g.degree(k) == 2:
        for v in sorted(g.adj(k)):
            out[v] = DEGREE_TWO
    tree = tree or gomory_hu(g)
    for v in sorted(g.vertices - {k}):
        if v not in out and tree.query(k, v) == 1:
            out[v] = SINGLE_PATH

    everything = g.vertices
    for v, _, cut in tree.edges():
        if cut > max_cut:
            continue
        side = tree.side(v)
        far = side if k not in side else everything - side
        near = everything - far
        cut = sum(1 for u in far for w in g.adj(u) if w not in far)
        if all(u in out for u in far):
            continue
        near_boundary = _boundary(g, near)
        if k in near_boundary:
            continue
        need = cut // 2
        if not _hub_flows_ok(g, _mask(g, near - {k}), near_boundary, need):
            continue
        far_boundary = _boundary(g, far)
        if not _hub_flows_ok(g, _mask(g, far), far_boundary, need):
            continue
        remaining = set(far) - set(far_boundary)
        if need > 0 and len(far_boundary) > 1:
            far_graph = g.induced(far)
            hub = far_boundary[0]
            on_paths: set[int] = set()
            for other in far_boundary[1:]:
                for path in edge_disjoint_paths(far_graph, hub, other):
                    on_paths.update(path)
            for u in sorted(on_paths & remaining):
                if u in out:
                    continue
                if not _hub_flows_ok(g, _mask(g, far - {u}), far_boundary, need):
                    remaining.discard(u)
        for u in sorted(remaining):
            out.setdefault(u, CUT_DETOURS)
    return dict(sorted(out.items()))


def eliminate_then_brute_force(g: Graph, k: int, max_cut: int = 5) -> SingleResult:
    pruned = eliminate_by_theorems(g, k, max_cut)
    result = brute_force(g, k, candidates=[v for v in g.vertices if v not in pruned])
    result.eliminated = pruned
    return result


# -- divide and conquer -------------------------------------------------


@dataclass
class DivideResult(SingleResult):
    subsets: list[tuple[int, ...]] = field(default_factory=list)
    subset_effects: list[int] = field(default_factory=list)
    explored: list[int] = field(default_factory=list)


def divide_and_conquer(
    g: Graph, k: int, subset_size: int = 5, top_t: int = 2, seed: int = 0
) -> DivideResult:
    """Score a random partition of V minus k by subset deletion, then scan the best ``top_t`` subsets."""
    if subset_size < 2:
        raise InvalidArgumentError("subset_size must be at least 2")
    if top_t < 1:
        raise InvalidArgumentError("top_t must be at least 1")
    _check(g, k)
    rng = np.random.default_rng(seed)
    others = np.array(sorted(g.vertices - {k}), dtype=np.int64)
    shuffled = rng.permutation(others).tolist()
    count = math.ceil(len(shuffled) / subset_size)
    subsets = [tuple(sorted(shuffled[j * subset_size : (j + 1) * subset_size])) for j in range(count)]
    base = load(g, k)
    result = DivideResult(key=k, base_load=base, subsets=subsets)
    for members in subsets:
        result.subset_effects.append(load_effect(g, k, members, base_load=base))
        result.evaluations += 1
    ranked = sorted(range(count), key=lambda j: (-result.subset_effects[j], j))
    result.explored = ranked[:top_t]
    for j in result.explored:
        for i in subsets[j]:
            result.effects[i] = load_effect(g, k, [i], base_load=base)
            result.evaluations += 1
    return result
