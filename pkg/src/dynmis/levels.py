"""Level structure: per-vertex (level, role) assignment and per-level counters.

Vertex set ``V_i`` of level ``i`` is implicit: ``{v : level(v) >= i}``.
``n_i = |V_i|`` and ``m_i`` (edges with both endpoints in ``V_i``) are kept
live; ``snapshot_n``/``snapshot_m`` are frozen whenever the level is (re)built
and drive the factor-2 rebuild rule.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from dynmis.graph import DynamicGraph


class Role(enum.Enum):
    INDEPENDENT = "I"
    DOMINATED = "N"


class Unassigned(LookupError):
    pass


def default_level_cap(n: int) -> int:
    return 4 * math.ceil(math.log2(n)) + 1 if n > 1 else 1


@dataclass(eq=False)
class Level:
    index: int
    independent: set[int] = field(default_factory=set)
    dominated: set[int] = field(default_factory=set)
    n: int = 0
    m: int = 0
    snapshot_n: int = 0
    snapshot_m: int = 0

    def members(self, role: Role) -> set[int]:
        return self.independent if role is Role.INDEPENDENT else self.dominated

    def freeze(self) -> None:
        self.snapshot_n = self.n
        self.snapshot_m = self.m

    def breached(self) -> bool:
        """Factor-2 drift from the snapshot; all comparisons are strict."""
        if 2 * self.n < self.snapshot_n:
            return True
        if self.snapshot_m == 0:
            # no ratio to drift from; breach once the level stops being sparse
            return self.m > self.snapshot_n
        return self.m > 2 * self.snapshot_m or 2 * self.m < self.snapshot_m

    def dump(self) -> str:
        return (
            f"level {self.index}: {self.n} {self.m} {len(self.independent)} "
            f"{len(self.dominated)} {self.snapshot_n} {self.snapshot_m}"
        )


class LevelSet:
    """Levels ``L_1..L_k`` over a graph, plus the vertex assignment.

    The level set keeps a reference to its graph; moving a vertex between
    levels rescans that vertex's neighbors (charged to the graph's counter)
    to keep ``m_i`` exact.
    """

    def __init__(self, graph: DynamicGraph, level_cap: int | None = None) -> None:
        self.graph = graph
        self.level_cap = level_cap if level_cap is not None else default_level_cap(graph.n)
        if self.level_cap < 1:
            raise ValueError("level cap must be positive")
        self.levels: list[Level] = []
        # 0 means unassigned; index 0 unused
        self.level: list[int] = [0] * (graph.n + 1)
        self.role: list[Role | None] = [None] * (graph.n + 1)

    @property
    def k(self) -> int:
        return len(self.levels)

    def __getitem__(self, i: int) -> Level:
        """1-based level access."""
        if not 1 <= i <= len(self.levels):
            raise IndexError(f"level {i} outside [1, {len(self.levels)}]")
        return self.levels[i - 1]

    def __iter__(self):
        return iter(self.levels)

    def level_of(self, v: int) -> int:
        lvl = self.level[v]
        if lvl == 0:
            raise Unassigned(v)
        return lvl

    def role_of(self, v: int) -> Role:
        role = self.role[v]
        if role is None:
            raise Unassigned(v)
        return role

    def is_independent(self, v: int) -> bool:
        return self.role[v] is Role.INDEPENDENT

    def mis(self) -> set[int]:
        out: set[int] = set()
        for lvl in self.levels:
            out |= lvl.independent
        return out

    # -- construction helpers used by the builders --------------------------

    def truncate(self, keep: int) -> None:
        """Drop levels above ``keep`` and unassign their vertices."""
        for lvl in self.levels[keep:]:
            for v in lvl.independent:
                self.level[v] = 0
                self.role[v] = None
            for v in lvl.dominated:
                self.level[v] = 0
                self.role[v] = None
        del self.levels[keep:]

    def open_level(self, n: int, m: int) -> Level:
        lvl = Level(index=len(self.levels) + 1, n=n, m=m, snapshot_n=n, snapshot_m=m)
        self.levels.append(lvl)
        return lvl

    def place(self, v: int, lvl: Level, role: Role) -> None:
        """Initial placement of an unassigned vertex; counters untouched."""
        lvl.members(role).add(v)
        self.level[v] = lvl.index
        self.role[v] = role

    # -- live mutation ------------------------------------------------------

    def assign(self, v: int, i: int, role: Role) -> None:
        """Move ``v`` to ``(i, role)`` keeping ``n_l`` and ``m_l`` exact."""
        if not 1 <= i <= len(self.levels):
            raise IndexError(f"level {i} outside [1, {len(self.levels)}]")
        old = self.level_of(v)
        old_role = self.role[v]
        if old == i and old_role is role:
            return
        levels = self.levels
        levels[old - 1].members(old_role).discard(v)
        levels[i - 1].members(role).add(v)
        self.level[v] = i
        self.role[v] = role
        if old != i:
            if i < old:
                for lvl in levels[i:old]:
                    lvl.n -= 1
            else:
                for lvl in levels[old:i]:
                    lvl.n += 1
            self.recount_on_move(v, old, i)

    def recount_on_move(self, v: int, old: int, new: int) -> None:
        """Fix ``m_l`` after ``v`` moved from level ``old`` to ``new``.

        Edge (v, w) counts toward ``m_l`` for every ``l <= min(level v, level w)``.
        """
        levels = self.levels
        level = self.level
        for w in self.graph.neighbor_list(v):
            lw = level[w]
            before = old if old < lw else lw
            after = new if new < lw else lw
            if after > before:
                for lvl in levels[before:after]:
                    lvl.m += 1
            elif after < before:
                for lvl in levels[after:before]:
                    lvl.m -= 1

    def edge_added(self, u: int, v: int) -> None:
        top = min(self.level[u], self.level[v])
        for lvl in self.levels[:top]:
            lvl.m += 1

    def edge_removed(self, u: int, v: int) -> None:
        top = min(self.level[u], self.level[v])
        for lvl in self.levels[:top]:
            lvl.m -= 1

    def density_breach(self) -> int | None:
        for lvl in self.levels:
            if lvl.breached():
                return lvl.index
        return None

    def dump(self) -> str:
        return "\n".join(lvl.dump() for lvl in self.levels)

    def __repr__(self) -> str:
        return f"LevelSet(k={self.k}, mis={sum(len(l.independent) for l in self.levels)})"
