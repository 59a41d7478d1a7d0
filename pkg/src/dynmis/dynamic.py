"""Edge insertion/deletion on a level set.

Every update leaves ``mis()`` a maximal independent set of the current graph
and each dominated vertex at the lowest level among its independent
neighbors. Orphaned vertices are resettled through a FIFO work queue, so a
cascade never recurses.
"""

from __future__ import annotations

import enum
import random
from collections import Counter, deque
from dataclasses import dataclass, field

from dynmis.graph import DynamicGraph
from dynmis.levels import LevelSet, Role
from dynmis.offline import BuildConfig, build, rebuild_suffix

INDEPENDENT = Role.INDEPENDENT
DOMINATED = Role.DOMINATED


class InsertionKind(enum.Enum):
    LIGHT_INSERTION = "light_insertion"
    LIGHT_PROMOTION = "light_promotion"
    HEAVY_PROMOTION = "heavy_promotion"


@dataclass(frozen=True)
class Classification:
    """``u`` is the independent endpoint when there is one; ``v`` may move.

    For promotions ``i = level(u)`` and ``j = level(v)`` with ``i <= j``.
    """

    kind: InsertionKind
    u: int
    v: int
    i: int
    j: int


def classify_insertion(ls: LevelSet, u: int, v: int) -> Classification:
    level, role = ls.level, ls.role
    ru, rv = role[u], role[v]
    if ru is DOMINATED and rv is DOMINATED:
        return Classification(InsertionKind.LIGHT_INSERTION, u, v, level[u], level[v])
    if ru is INDEPENDENT and rv is INDEPENDENT:
        # deeper endpoint gives way; equal levels: larger id gives way
        if (level[u], u) > (level[v], v):
            u, v = v, u
        return Classification(InsertionKind.HEAVY_PROMOTION, u, v, level[u], level[v])
    if rv is INDEPENDENT:
        u, v = v, u
    i, j = level[u], level[v]
    if i < j:
        return Classification(InsertionKind.LIGHT_PROMOTION, u, v, i, j)
    return Classification(InsertionKind.LIGHT_INSERTION, u, v, i, j)


@dataclass
class EngineStats:
    events: Counter = field(default_factory=Counter)
    rebuilds: int = 0
    demotions: int = 0
    forced_fallbacks: int = 0

    @property
    def heavy_promotions(self) -> int:
        return self.events[InsertionKind.HEAVY_PROMOTION.value]


class DynamicMIS:
    """A single randomized run: graph, level set, RNG and update logic."""

    def __init__(self, graph: DynamicGraph, cfg: BuildConfig | None = None,
                 rng: random.Random | None = None, ls: LevelSet | None = None) -> None:
        self.graph = graph
        self.cfg = cfg or BuildConfig()
        self.rng = rng if rng is not None else random.Random(self.cfg.seed)
        self.ls = ls if ls is not None else build(graph, self.cfg, self.rng)
        self.stats = EngineStats()

    def mis(self) -> set[int]:
        return self.ls.mis()

    # -- public update entry points -----------------------------------------

    def insert(self, u: int, v: int) -> tuple[str, bool]:
        """Insert edge ``(u, v)``; returns ``(event kind, rebuilt)``."""
        self.graph.insert_edge(u, v)
        ls = self.ls
        ls.edge_added(u, v)
        cls = classify_insertion(ls, u, v)
        if cls.kind is InsertionKind.LIGHT_PROMOTION:
            self.light_promotion(cls.v, cls.i)
        elif cls.kind is InsertionKind.HEAVY_PROMOTION:
            ls.assign(cls.v, cls.i, DOMINATED)
            self.heavy_promotion(cls.v, cls.j)
        self.stats.events[cls.kind.value] += 1
        return cls.kind.value, self.check_density_and_rebuild()

    def delete(self, u: int, v: int) -> tuple[str, bool]:
        """Delete edge ``(u, v)``; returns ``(event kind, rebuilt)``."""
        self.graph.delete_edge(u, v)
        ls = self.ls
        ls.edge_removed(u, v)
        role, level = ls.role, ls.level
        if role[v] is INDEPENDENT:
            u, v = v, u
        kind = "deletion"
        if role[u] is INDEPENDENT and role[v] is DOMINATED and level[u] == level[v]:
            i = level[v]
            if not self._has_independent_neighbor_at(v, i):
                kind = "deletion_demotion"
                self.demotion(v, i)
        self.stats.events[kind] += 1
        return kind, self.check_density_and_rebuild()

    # -- subroutines --------------------------------------------------------

    def light_promotion(self, v: int, r: int) -> bool:
        """Move ``v`` up to ``(r, Dominated)``; False (no-op) unless ``r < level(v)``."""
        if r >= self.ls.level_of(v):
            return False
        self.ls.assign(v, r, DOMINATED)
        return True

    def heavy_promotion(self, v: int, j: int) -> list[int]:
        """Resettle the vertices that ``v`` alone dominated at level ``j``.

        ``v`` must already have left ``I_j``. Returns the freed set ``F``.
        """
        freed = self._orphans_of(v, j)
        self._settle(freed)
        return freed

    def demotion(self, w: int, j: int) -> None:
        """Resettle ``w`` (dominated at level ``j``, possibly stale) and any cascade."""
        self._settle([w])

    def check_density_and_rebuild(self) -> bool:
        i = self.ls.density_breach()
        if i is None:
            return False
        rebuild_suffix(self.ls, i, self.cfg, self.rng)
        self.stats.rebuilds += 1
        return True

    # -- internals ----------------------------------------------------------

    def _has_independent_neighbor_at(self, v: int, i: int) -> bool:
        ind = self.ls[i].independent
        for x in self.graph.neighbors(v):
            if x in ind:
                return True
        return False

    def _orphans_of(self, v: int, j: int) -> list[int]:
        """Dominated level-``j`` neighbors of ``v`` with no other ``I_j`` neighbor."""
        ls = self.ls
        level, role = ls.level, ls.role
        out = []
        for w in self.graph.neighbor_list(v):
            if level[w] == j and role[w] is DOMINATED and not self._has_independent_neighbor_at(w, j):
                out.append(w)
        return out

    def _settle(self, initial: list[int]) -> None:
        queue = deque(initial)
        pending = set(initial)
        while queue:
            w = queue.popleft()
            pending.discard(w)
            for x in self._demote_one(w):
                if x not in pending:
                    pending.add(x)
                    queue.append(x)

    def _demote_one(self, w: int) -> list[int]:
        ls = self.ls
        level, role = ls.level, ls.role
        if role[w] is INDEPENDENT:
            return []
        self.stats.demotions += 1
        lowest = 0
        for x in self.graph.neighbors(w):
            if role[x] is INDEPENDENT and (lowest == 0 or level[x] < lowest):
                lowest = level[x]
        if lowest:
            ls.assign(w, lowest, DOMINATED)
            return []
        c, rng = self.cfg.c, self.rng
        target = 0
        for r in range(level[w], ls.k + 1):
            lvl = ls[r]
            p = 1.0 if lvl.m == 0 else lvl.n / (c * lvl.m)
            if p >= 1.0 or rng.random() < p:
                target = r
                break
        if not target:
            target = ls.k
            self.stats.forced_fallbacks += 1
        return self._make_independent(w, target)

    def _make_independent(self, w: int, r: int) -> list[int]:
        ls = self.ls
        level, role = ls.level, ls.role
        ls.assign(w, r, INDEPENDENT)
        orphans: list[int] = []
        for z in self.graph.neighbor_list(w):
            lz = level[z]
            if role[z] is INDEPENDENT:
                # only reachable if a cascade invalidated w's neighbor scan
                ls.assign(z, r, DOMINATED)
                orphans.extend(self._orphans_of(z, lz))
            elif lz > r:
                ls.assign(z, r, DOMINATED)
        return orphans
