"""From-scratch construction of a :class:`LevelSet`.

Two builders share the epoch loop. ``build_rejection`` grows each level's
independent set by rejection-sampling uniform vertices of the residual graph
until ``ceil(n_i^2 / (c m_i))`` have been accepted. ``build_subset`` keeps
each residual vertex with probability ``min(n_i / m_i, 1)`` and runs greedy
on the induced sample. Both finish with a shuffled greedy pass once the
residual graph is sparse (``m_i <= n_i``) or the level cap is reached.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from dynmis.graph import DynamicGraph
from dynmis.levels import LevelSet, Role

SUBSET_RETRIES = 20
# below this eligible fraction, draw straight from the eligible pool
_REJECTION_FLOOR = 1 / 16


@dataclass
class BuildConfig:
    c: float = 34.0
    seed: int = 0
    level_cap: int | None = None
    method: str = "rejection"

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if self.method not in ("rejection", "subset"):
            raise ValueError(f"unknown build method {self.method!r}")


@dataclass
class Epoch:
    """What one epoch decided, before it is written into the level set."""

    independent: list[int]
    dominated: list[int]
    sample: list[int] = field(default_factory=list)
    retries: int = 0
    # neighbor lists already paid for during the epoch
    scanned: dict[int, list[int]] = field(default_factory=dict)


def greedy_mis(order: Iterable[int], g: DynamicGraph) -> list[int]:
    """Scan ``order`` and keep every vertex with no neighbor kept so far.

    Restriction to the subgraph induced by ``order`` is automatic: only
    vertices from ``order`` are ever kept. The neighbor scan stops at the
    first kept neighbor, so a rejected vertex is charged only up to it.
    """
    kept: list[int] = []
    inside: set[int] = set()
    for v in order:
        for w in g.neighbors(v):
            if w in inside:
                break
        else:
            kept.append(v)
            inside.add(v)
    return kept


def _shuffled_greedy(g: DynamicGraph, order: Sequence[int], rng: random.Random) -> Epoch:
    perm = list(order)
    rng.shuffle(perm)
    ind = greedy_mis(perm, g)
    taken = set(ind)
    return Epoch(ind, [v for v in order if v not in taken], sample=perm)


def rejection_epoch(
    g: DynamicGraph, order: Sequence[int], alive: set[int], m_i: int, c: float, rng: random.Random
) -> Epoch:
    """One level of the rejection-sampling builder on residual ``alive``.

    Accepted samples are uniform over vertices not yet in ``I ∪ N(I)``; the
    epoch ends early when no such vertex remains.
    """
    n_i = len(order)
    target = max(math.ceil(n_i * n_i / (c * m_i)), 1)
    taken: set[int] = set()
    ind: list[int] = []
    dom: list[int] = []
    scanned: dict[int, list[int]] = {}
    eligible = n_i
    pool: list[int] | None = None
    while len(ind) < target and eligible > 0:
        if eligible >= n_i * _REJECTION_FLOOR:
            while True:
                v = order[rng.randrange(n_i)]
                if v not in taken:
                    break
        else:
            if pool is None:
                pool = [x for x in order if x not in taken]
            else:
                pool = [x for x in pool if x not in taken]
            v = pool[rng.randrange(len(pool))]
        ind.append(v)
        taken.add(v)
        eligible -= 1
        nbrs = g.neighbor_list(v)
        scanned[v] = nbrs
        for w in nbrs:
            if w in alive and w not in taken:
                taken.add(w)
                dom.append(w)
                eligible -= 1
    return Epoch(ind, dom, sample=list(ind), scanned=scanned)


def subset_epoch(
    g: DynamicGraph, order: Sequence[int], alive: set[int], m_i: int, rng: random.Random
) -> Epoch:
    """One level of the subset-sampling builder on residual ``alive``."""
    n_i = len(order)
    p = 1.0 if m_i <= n_i else n_i / m_i
    for attempt in range(SUBSET_RETRIES + 1):
        if p >= 1.0:
            sample = list(order)
        else:
            sample = [v for v in order if rng.random() < p]
        rng.shuffle(sample)
        ind = greedy_mis(sample, g)
        if ind:
            break
    else:
        epoch = _shuffled_greedy(g, order, rng)
        epoch.retries = SUBSET_RETRIES + 1
        return epoch
    taken = set(ind)
    dom: list[int] = []
    scanned: dict[int, list[int]] = {}
    for v in ind:
        nbrs = g.neighbor_list(v)
        scanned[v] = nbrs
        for w in nbrs:
            if w in alive and w not in taken:
                taken.add(w)
                dom.append(w)
    return Epoch(ind, dom, sample=sample, retries=attempt, scanned=scanned)


def _removed_edges(g: DynamicGraph, epoch: Epoch, alive: set[int]) -> int:
    """Edges of the residual graph with an endpoint in ``I ∪ N(I)``."""
    done: set[int] = set()
    count = 0
    for x in (*epoch.independent, *epoch.dominated):
        nbrs = epoch.scanned.get(x)
        if nbrs is None:
            nbrs = g.neighbor_list(x)
        for w in nbrs:
            if w in alive and w not in done:
                count += 1
        done.add(x)
    return count


EpochFn = Callable[[DynamicGraph, Sequence[int], set, int, random.Random], Epoch]


def build_levels(
    ls: LevelSet,
    vertices: Sequence[int],
    m: int,
    cfg: BuildConfig,
    rng: random.Random,
    trace: list[Epoch] | None = None,
) -> None:
    """Append levels to ``ls`` covering ``vertices`` (which span ``m`` edges)."""
    g = ls.graph
    if cfg.method == "subset":
        step: EpochFn = subset_epoch
    else:
        c = cfg.c

        def step(g, order, alive, m_i, rng):
            return rejection_epoch(g, order, alive, m_i, c, rng)

    order = list(vertices)
    alive = set(order)
    while order:
        n_i = len(order)
        lvl = ls.open_level(n_i, m)
        if m == 0:
            epoch = Epoch(order, [])
        elif m <= n_i or lvl.index >= ls.level_cap:
            epoch = _shuffled_greedy(g, order, rng)
        else:
            epoch = step(g, order, alive, m, rng)
        if trace is not None:
            trace.append(epoch)
        for v in epoch.independent:
            ls.place(v, lvl, Role.INDEPENDENT)
        for v in epoch.dominated:
            ls.place(v, lvl, Role.DOMINATED)
        if len(epoch.independent) + len(epoch.dominated) == n_i:
            break
        m -= _removed_edges(g, epoch, alive)
        alive.difference_update(epoch.independent)
        alive.difference_update(epoch.dominated)
        order = [v for v in order if v in alive]


def build(g: DynamicGraph, cfg: BuildConfig, rng: random.Random | None = None,
          trace: list[Epoch] | None = None) -> LevelSet:
    if rng is None:
        rng = random.Random(cfg.seed)
    ls = LevelSet(g, cfg.level_cap)
    build_levels(ls, list(g.vertices()), g.edge_count, cfg, rng, trace)
    return ls


def build_rejection(g: DynamicGraph, cfg: BuildConfig | None = None,
                    rng: random.Random | None = None, trace: list[Epoch] | None = None) -> LevelSet:
    cfg = cfg or BuildConfig()
    if cfg.method != "rejection":
        cfg = BuildConfig(c=cfg.c, seed=cfg.seed, level_cap=cfg.level_cap)
    return build(g, cfg, rng, trace)


def build_subset(g: DynamicGraph, cfg: BuildConfig | None = None,
                 rng: random.Random | None = None, trace: list[Epoch] | None = None) -> LevelSet:
    cfg = cfg or BuildConfig()
    cfg = BuildConfig(c=cfg.c, seed=cfg.seed, level_cap=cfg.level_cap, method="subset")
    return build(g, cfg, rng, trace)


def rebuild_suffix(ls: LevelSet, i: int, cfg: BuildConfig, rng: random.Random) -> None:
    """Discard levels ``i..k`` and rebuild them on ``{v : level(v) >= i}``."""
    if not 1 <= i <= ls.k:
        raise IndexError(f"level {i} outside [1, {ls.k}]")
    m = ls[i].m
    suffix: set[int] = set()
    for lvl in ls.levels[i - 1:]:
        suffix |= lvl.independent
        suffix |= lvl.dominated
    vertices = sorted(suffix)
    ls.truncate(i - 1)
    if vertices:
        build_levels(ls, vertices, m, cfg, rng)
