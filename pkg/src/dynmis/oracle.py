"""Brute-force ground truth. Reads raw adjacency, never the query counter."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from dynmis.graph import DynamicGraph
from dynmis.levels import LevelSet, Role


def is_independent(g: DynamicGraph, s: Iterable[int]) -> bool:
    members = set(s)
    for v in members:
        if not members.isdisjoint(g.raw_adjacency(v)):
            return False
    return True


def is_maximal_independent(g: DynamicGraph, s: Iterable[int]) -> bool:
    members = set(s)
    if not is_independent(g, members):
        return False
    for v in g.vertices():
        if v not in members and members.isdisjoint(g.raw_adjacency(v)):
            return False
    return True


def induced_edge_count(g: DynamicGraph, s: Iterable[int]) -> int:
    members = set(s)
    return sum(len(members.intersection(g.raw_adjacency(v))) for v in members) // 2


def recount(g: DynamicGraph, ls: LevelSet) -> tuple[list[int], list[int]]:
    """``(n_i, m_i)`` for every level, computed from scratch."""
    k = ls.k
    n = [0] * (k + 1)
    m = [0] * (k + 1)
    for v in g.vertices():
        lv = ls.level[v]
        if lv:
            n[min(lv, k)] += 1
        for w in g.raw_adjacency(v):
            if v < w:
                top = min(lv, ls.level[w], k)
                if top:
                    m[top] += 1
    # counts bucketed at their top level; suffix-sum to "level >= i"
    for i in range(k - 1, 0, -1):
        n[i] += n[i + 1]
        m[i] += m[i + 1]
    return n[1:], m[1:]


@dataclass
class AuditReport:
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, name: str, *witness) -> None:
        self.violations.append((name, witness))

    def names(self) -> set[str]:
        return {name for name, _ in self.violations}

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"invariant": name, "witness": list(w)} for name, w in self.violations],
        }

    def __str__(self) -> str:
        if self.passed:
            return "audit passed"
        lines = [f"audit failed ({len(self.violations)} violations)"]
        lines += [f"  {name}: {w}" for name, w in self.violations[:20]]
        return "\n".join(lines)


def audit_levels(g: DynamicGraph, ls: LevelSet) -> AuditReport:
    """Check partition, independence, domination, counters and monotonicity.

    Also checks that every dominated vertex sits at the lowest level of its
    independent neighbors, which the update engine maintains.
    """
    report = AuditReport()
    seen: dict[int, tuple[int, Role]] = {}
    for lvl in ls.levels:
        if not lvl.independent.isdisjoint(lvl.dominated):
            for v in lvl.independent & lvl.dominated:
                report.add("partition", v, lvl.index)
        for role, members in ((Role.INDEPENDENT, lvl.independent), (Role.DOMINATED, lvl.dominated)):
            for v in members:
                if v in seen:
                    report.add("partition", v, seen[v][0], lvl.index)
                seen[v] = (lvl.index, role)
                if ls.level[v] != lvl.index or ls.role[v] is not role:
                    report.add("assignment", v, lvl.index)
    for v in g.vertices():
        if v not in seen:
            report.add("partition", v)

    mis = ls.mis()
    for v in mis:
        for w in g.raw_adjacency(v):
            if v < w and w in mis:
                report.add("independence", v, w)

    for lvl in ls.levels:
        for v in lvl.dominated:
            lowest = min((ls.level[w] for w in g.raw_adjacency(v) if w in mis), default=None)
            if lowest is None or not lvl.independent.intersection(g.raw_adjacency(v)):
                report.add("domination", v, lvl.index)
            elif lowest != lvl.index:
                report.add("lowest_level", v, lvl.index, lowest)

    n_true, m_true = recount(g, ls)
    for lvl, nt, mt in zip(ls.levels, n_true, m_true):
        if lvl.n != nt:
            report.add("counter_n", lvl.index, lvl.n, nt)
        if lvl.m != mt:
            report.add("counter_m", lvl.index, lvl.m, mt)
    if ls.levels and (ls.levels[0].n != g.n or ls.levels[0].m != g.edge_count):
        report.add("counter_top", ls.levels[0].n, ls.levels[0].m)
    for a, b in zip(ls.levels, ls.levels[1:]):
        if b.n > a.n or b.m > a.m:
            report.add("monotonicity", b.index)
    return report
