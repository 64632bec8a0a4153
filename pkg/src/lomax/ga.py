"""Genetic algorithm for multi-vertex LOMAX, plus the random-search baseline.

A solution is a fixed-length list of slots, each holding a vertex id or
:data:`DUMMY`; dummies let one representation cover every subset size up to
``max_size``.  Slot order is insertion order and is never sorted, because the
recombination operators cut solutions by slot position.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from lomax import _kernels
from lomax.errors import InvalidArgumentError
from lomax.graph import Graph
from lomax.single import brute_force

DUMMY = -1


@dataclass(frozen=True)
class Solution:
    slots: tuple[int, ...]
    fitness: int | None = None

    @property
    def canonical(self) -> tuple[int, ...]:
        return tuple(sorted(v for v in self.slots if v != DUMMY))

    @property
    def has_duplicates(self) -> bool:
        real = [v for v in self.slots if v != DUMMY]
        return len(real) != len(set(real))


@dataclass
class GAConfig:
    pool_size: int = 20
    max_size: int = 6
    max_iterations: int = 300
    # None disables the stagnation stop
    max_stagnation: int | None = 100
    seed: int = 0


class Evaluator:
    """Memoised load effect of deleting a vertex subset."""

    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self._arrays = g.arrays
        indptr, indices, rev, alive = self._arrays
        self.base_load = int(_kernels.load(indptr, indices, rev, alive, k))
        self._cache: dict[tuple[int, ...], int] = {(): 0}

    def __call__(self, members: tuple[int, ...]) -> int:
        hit = self._cache.get(members)
        if hit is not None:
            return hit
        indptr, indices, rev, alive = self._arrays
        mask = alive.copy()
        mask[list(members)] = False
        value = int(_kernels.load(indptr, indices, rev, mask, self.k)) - self.base_load
        self._cache[members] = value
        return value


@dataclass
class GAState:
    pool: list[Solution]
    best_ever: Solution
    rng: np.random.Generator
    evaluator: Evaluator = field(repr=False)
    candidates: list[int] = field(repr=False)
    max_size: int = 6
    iteration: int = 0
    stagnation: int = 0
    evaluations: int = 0
    history: list[int] = field(default_factory=list)
    seen: set[tuple[int, ...]] = field(default_factory=set, repr=False)

    def evaluate(self, slots: tuple[int, ...]) -> Solution:
        sol = Solution(slots)
        sol = Solution(slots, self.evaluator(sol.canonical))
        self.seen.add(sol.canonical)
        self.evaluations += 1
        return sol

    def absorb(self, pool: list[Solution]) -> None:
        """Install a freshly evaluated pool and advance the iteration counters."""
        self.pool = pool
        self.iteration += 1
        champion = max(pool, key=lambda s: s.fitness)
        if champion.fitness > self.best_ever.fitness:
            self.best_ever = champion
            self.stagnation = 0
        else:
            self.stagnation += 1
        self.history.append(self.best_ever.fitness)


def random_slots(rng: np.random.Generator, candidates: list[int], max_size: int) -> tuple[int, ...]:
    """Fill slots in order; each draws uniformly from the unused vertices plus one dummy option."""
    slots: list[int] = []
    used: set[int] = set()
    for _ in range(max_size):
        options = len(candidates) - len(used)
        j = int(rng.integers(options + 1))
        if j == options:
            slots.append(DUMMY)
            continue
        for v in candidates:
            if v in used:
                continue
            if j == 0:
                slots.append(v)
                used.add(v)
                break
            j -= 1
    return tuple(slots)


def hybrids(a: tuple[int, ...], b: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """The four recombinations of two parents, in the order they are tried.

    Two alternating patterns (a at even slots / b at odd slots, and the
    reverse) followed by two half swaps (first half of one parent with the
    second half of the other, both ways).
    """
    size = len(a)
    half = size // 2
    yield tuple(a[j] if j % 2 == 0 else b[j] for j in range(size))
    yield tuple(b[j] if j % 2 == 0 else a[j] for j in range(size))
    yield a[:half] + b[half:]
    yield b[:half] + a[half:]


def _top_count(pool_size: int, max_size: int) -> int:
    m = max_size + 2
    while math.comb(m, max_size) < pool_size:
        m += 1
    return m


def init_pool(
    g: Graph,
    k: int,
    pool_size: int = 20,
    max_size: int = 6,
    seed: int = 0,
    single_effects: dict[int, int] | None = None,
) -> GAState:
    """Initial pool: max_size-combinations of the vertices with the best single-vertex effects.

    The number of top vertices is the smallest m >= max_size + 2 with
    C(m, max_size) >= pool_size (8 for the default 20 / 6).  Combinations are
    taken in lexicographic order of effect rank; if the graph is too small to
    supply enough of them the remainder is drawn at random.
    """
    if pool_size < 1 or max_size < 1:
        raise InvalidArgumentError("pool_size and max_size must be positive")
    if g.n < max_size + 2:
        raise InvalidArgumentError(f"graph needs at least {max_size + 2} vertices")
    if k not in g:
        raise InvalidArgumentError(f"unknown key vertex {k!r}")
    if single_effects is None:
        single_effects = brute_force(g, k).effects
    ranked = sorted(single_effects, key=lambda v: (-single_effects[v], v))
    top = ranked[: _top_count(pool_size, max_size)]
    combos = itertools.islice(itertools.combinations(range(len(top)), max_size), pool_size)
    slot_lists = [tuple(top[j] for j in combo) for combo in combos]

    candidates = sorted(g.vertices - {k})
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0]))
    evaluator = Evaluator(g, k)
    placeholder = Solution((DUMMY,) * max_size, 0)
    state = GAState([], placeholder, rng, evaluator, candidates, max_size)
    while len(slot_lists) < pool_size:
        slot_lists.append(random_slots(rng, candidates, max_size))
    state.pool = [state.evaluate(slots) for slots in slot_lists]
    state.best_ever = max(state.pool, key=lambda s: s.fitness)
    state.history.append(state.best_ever.fitness)
    return state


def step(state: GAState, g: Graph | None = None, k: int | None = None) -> GAState:
    """One iteration: selection, recombination of the good half, random generation, evaluation."""
    if (g is not None and g is not state.evaluator.g and g != state.evaluator.g) or (
        k is not None and k != state.evaluator.k
    ):
        raise InvalidArgumentError("state was initialised for a different graph or key vertex")
    pool_size = len(state.pool)
    order = sorted(range(pool_size), key=lambda j: -state.pool[j].fitness)
    n_children = pool_size // 2
    good = [state.pool[j].slots for j in order[:n_children]]

    new_slots: list[tuple[int, ...]] = []
    pending: set[tuple[int, ...]] = set()
    for idx in range(0, len(good), 2):
        if len(new_slots) >= n_children:
            break
        a = good[idx]
        b = good[idx + 1] if idx + 1 < len(good) else good[0]
        made = 0
        for child in hybrids(a, b):
            if made == 2 or len(new_slots) >= n_children:
                break
            sol = Solution(child)
            key = sol.canonical
            if sol.has_duplicates or key in state.seen or key in pending:
                continue
            pending.add(key)
            new_slots.append(child)
            made += 1
        while made < 2 and len(new_slots) < n_children:
            new_slots.append(random_slots(state.rng, state.candidates, state.max_size))
            made += 1
    while len(new_slots) < pool_size:
        new_slots.append(random_slots(state.rng, state.candidates, state.max_size))
    state.absorb([state.evaluate(slots) for slots in new_slots])
    return state


def _should_stop(state: GAState, config: GAConfig) -> bool:
    if state.iteration >= config.max_iterations:
        return True
    return config.max_stagnation is not None and state.stagnation >= config.max_stagnation


def run(g: Graph, k: int, config: GAConfig, state: GAState | None = None) -> GAState:
    """Iterate the GA until the iteration or stagnation limit is reached."""
    if state is None:
        state = init_pool(g, k, config.pool_size, config.max_size, config.seed)
    while not _should_stop(state, config):
        step(state)
    return state


def fork(state: GAState, seed: int, stream: int) -> GAState:
    """Independent copy of ``state`` (same pool, fresh RNG stream) for paired comparisons."""
    return GAState(
        pool=list(state.pool),
        best_ever=state.best_ever,
        rng=np.random.default_rng(np.random.SeedSequence([seed, stream])),
        evaluator=state.evaluator,
        candidates=state.candidates,
        max_size=state.max_size,
        iteration=state.iteration,
        stagnation=state.stagnation,
        evaluations=state.evaluations,
        history=list(state.history),
        seen=set(state.seen),
    )


def random_search(g: Graph, k: int, config: GAConfig, state: GAState | None = None) -> GAState:
    """Baseline: every iteration replaces the whole pool with fresh random solutions.

    Starts from the same initial pool as the GA and spends the same number of
    evaluations per iteration.
    """
    if state is None:
        state = init_pool(g, k, config.pool_size, config.max_size, config.seed)
    state = fork(state, config.seed, 1)
    pool_size = len(state.pool)
    while not _should_stop(state, config):
        slots = [random_slots(state.rng, state.candidates, state.max_size) for _ in range(pool_size)]
        state.absorb([state.evaluate(s) for s in slots])
    return state
