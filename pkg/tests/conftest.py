import random

import pytest

from dynmis.graph import DynamicGraph
from dynmis.levels import LevelSet, Role
from dynmis.oracle import recount


def gnm(n, m, seed):
    """Uniform random graph with exactly ``m`` edges."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)]
    return DynamicGraph.from_edges(n, rng.sample(pairs, m))


def make_levels(g, assignment, k=None):
    """Hand-built level set from ``{v: (level, 'I' | 'N')}`` with exact counters."""
    k = k or max(lvl for lvl, _ in assignment.values())
    ls = LevelSet(g)
    for _ in range(k):
        ls.open_level(0, 0)
    for v, (lvl, role) in sorted(assignment.items()):
        ls.place(v, ls[lvl], Role.INDEPENDENT if role == "I" else Role.DOMINATED)
    n_true, m_true = recount(g, ls)
    for lvl, nt, mt in zip(ls.levels, n_true, m_true):
        lvl.n, lvl.m = nt, mt
        lvl.freeze()
    return ls


def random_ops(n, count, p_delete, seed):
    """Feasible op list ``[(kind, u, v)]`` built independently of the workload module."""
    rng = random.Random(seed)
    present = []
    index = {}
    out = []
    total = n * (n - 1) // 2
    for _ in range(count):
        if present and (len(present) == total or rng.random() < p_delete):
            e = present[rng.randrange(len(present))]
            i = index.pop(e)
            last = present.pop()
            if i < len(present):
                present[i] = last
                index[last] = i
            out.append(("-",) + e)
        else:
            while True:
                u, v = sorted(rng.sample(range(1, n + 1), 2))
                if (u, v) not in index:
                    break
            index[(u, v)] = len(present)
            present.append((u, v))
            out.append(("+", u, v))
    return out


@pytest.fixture
def path3():
    return DynamicGraph.from_edges(3, [(1, 2), (2, 3)])
