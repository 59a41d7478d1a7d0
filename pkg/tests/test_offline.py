import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynmis.graph import DynamicGraph
from dynmis.levels import Role
from dynmis.offline import (
    BuildConfig,
    build_rejection,
    build_subset,
    greedy_mis,
    rebuild_suffix,
    rejection_epoch,
    subset_epoch,
)
from dynmis.oracle import audit_levels, is_independent, is_maximal_independent

from conftest import gnm


def test_greedy_path():
    g = DynamicGraph.from_edges(3, [(1, 2), (2, 3)])
    assert greedy_mis([1, 2, 3], g) == [1, 3]


def test_greedy_star_center_first():
    g = DynamicGraph.from_edges(5, [(1, v) for v in range(2, 6)])
    assert greedy_mis([1, 2, 3, 4, 5], g) == [1]


@pytest.mark.parametrize("order", [[1, 2, 3], [3, 1, 2], [2, 3, 1]])
def test_greedy_triangle(order):
    g = DynamicGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    assert len(greedy_mis(order, g)) == 1


def test_greedy_respects_subset():
    # 2 is outside the order, so 1 and 3 are both kept
    g = DynamicGraph.from_edges(3, [(1, 2), (2, 3)])
    assert greedy_mis([1, 3], g) == [1, 3]


@given(st.integers(2, 25), st.data())
@settings(max_examples=80, deadline=None)
def test_greedy_is_maximal_in_induced_subgraph(n, data):
    pairs = [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    order = data.draw(st.permutations(range(1, n + 1)))
    cut = data.draw(st.integers(0, n))
    order = order[:cut]
    g = DynamicGraph.from_edges(n, edges)
    kept = set(greedy_mis(order, g))
    assert is_independent(g, kept)
    for v in order:
        assert v in kept or not kept.isdisjoint(g.raw_adjacency(v))


def test_rejection_edgeless():
    ls = build_rejection(DynamicGraph(5))
    assert ls.k == 1 and ls.mis() == set(range(1, 6))


def test_rejection_clique():
    n = 7
    g = DynamicGraph.from_edges(n, [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)])
    ls = build_rejection(g, BuildConfig(seed=9))
    assert ls.k == 1
    assert len(ls[1].independent) == 1
    assert len(ls[1].dominated) == n - 1


def test_subset_edgeless_clamps_to_all():
    trace = []
    ls = build_subset(DynamicGraph(5), trace=trace)
    assert ls.k == 1 and ls.mis() == set(range(1, 6))


def test_subset_sparse_epoch_samples_everything():
    g = gnm(40, 30, 1)
    ep = subset_epoch(g, list(g.vertices()), set(g.vertices()), g.edge_count, random.Random(0))
    assert sorted(ep.sample) == list(range(1, 41))
    assert len(ep.independent) + len(ep.dominated) == 40


@pytest.mark.parametrize("seed", range(100))
def test_rejection_valid_on_gnm(seed):
    g = gnm(50, 200, seed)
    ls = build_rejection(g, BuildConfig(seed=seed))
    assert is_maximal_independent(g, ls.mis())
    assert audit_levels(g, ls).passed


@pytest.mark.parametrize("seed", range(30))
def test_subset_valid_on_gnm(seed):
    g = gnm(50, 200, seed)
    ls = build_subset(g, BuildConfig(seed=seed))
    assert is_maximal_independent(g, ls.mis())
    assert audit_levels(g, ls).passed


@pytest.mark.parametrize("builder", [build_rejection, build_subset])
def test_builder_is_deterministic(builder):
    g = gnm(80, 600, 5)
    a = builder(g.copy(), BuildConfig(seed=11))
    b = builder(g.copy(), BuildConfig(seed=11))
    assert a.level == b.level and a.role == b.role
    assert [(l.n, l.m) for l in a] == [(l.n, l.m) for l in b]


def test_rejection_sample_count_matches_target():
    # n^2/(c m) = 100*100/(34*600) -> ceil = 1; with c=1 -> ceil(16.67)=17
    g = gnm(100, 600, 2)
    alive = set(g.vertices())
    order = list(g.vertices())
    ep = rejection_epoch(g, order, alive, 600, 34.0, random.Random(0))
    assert len(ep.independent) == 1
    ep = rejection_epoch(g, order, alive, 600, 1.0, random.Random(0))
    assert len(ep.independent) <= 17
    assert is_independent(g, ep.independent)


def test_rejection_epoch_ends_when_nothing_eligible():
    # star: the first accepted vertex (center or a leaf) may exhaust eligibility
    g = DynamicGraph.from_edges(6, [(1, v) for v in range(2, 7)])
    for seed in range(20):
        ep = rejection_epoch(g, list(g.vertices()), set(g.vertices()), 5, 1.0, random.Random(seed))
        covered = set(ep.independent) | set(ep.dominated)
        assert is_independent(g, ep.independent)
        assert covered == set(range(1, 7)) or len(ep.independent) == 36


def test_rejection_accepts_uniformly_over_eligible():
    # first accepted vertex is uniform over all vertices; chi-square style check
    g = gnm(10, 20, 0)
    counts = [0] * 11
    order = list(g.vertices())
    for seed in range(4000):
        ep = rejection_epoch(g, order, set(order), 20, 34.0, random.Random(seed))
        counts[ep.independent[0]] += 1
    expected = 400
    chi2 = sum((c - expected) ** 2 / expected for c in counts[1:])
    assert chi2 < 27.9  # 9 dof, p = 0.001


def test_level_cap_forces_final_greedy_level():
    g = gnm(200, 4000, 1)
    ls = build_rejection(g, BuildConfig(seed=1, level_cap=3))
    assert ls.k <= 3
    assert is_maximal_independent(g, ls.mis())
    assert audit_levels(g, ls).passed


def test_subset_fallback_after_retries(monkeypatch):
    import dynmis.offline as offline

    class NeverSample(random.Random):
        def random(self):
            return 0.999999

    g = gnm(40, 400, 3)
    ep = offline.subset_epoch(g, list(g.vertices()), set(g.vertices()), 400, NeverSample(1))
    assert ep.retries == offline.SUBSET_RETRIES + 1
    assert len(ep.independent) + len(ep.dominated) == 40


def test_build_costs_are_counted():
    g = gnm(60, 300, 0)
    build_rejection(g, BuildConfig(seed=0))
    assert 0 < g.queries <= 4 * 2 * 300 + 60


def test_rebuild_suffix_from_one_is_full_rebuild():
    g = gnm(80, 500, 3)
    ls = build_rejection(g, BuildConfig(seed=3))
    rebuild_suffix(ls, 1, BuildConfig(seed=3), random.Random(42))
    assert audit_levels(g, ls).passed
    assert ls[1].snapshot_m == 500 and ls[1].snapshot_n == 80


@pytest.mark.parametrize("seed", range(10))
def test_rebuild_suffix_middle(seed):
    g = gnm(120, 1200, seed)
    ls = build_rejection(g, BuildConfig(seed=seed))
    assert ls.k >= 3
    prefix = [(l.n, l.m, set(l.independent), set(l.dominated)) for l in ls.levels[:1]]
    rebuild_suffix(ls, 2, BuildConfig(seed=seed), random.Random(seed + 1))
    assert [(l.n, l.m, set(l.independent), set(l.dominated)) for l in ls.levels[:1]] == prefix
    assert audit_levels(g, ls).passed
    for lvl in ls:
        assert (lvl.snapshot_n, lvl.snapshot_m) == (lvl.n, lvl.m)


def test_rebuild_empty_suffix_truncates():
    g = gnm(80, 500, 3)
    ls = build_rejection(g, BuildConfig(seed=3))
    k = ls.k
    # drain the last level by hand, then rebuild it away
    last = ls[k]
    for v in list(last.independent | last.dominated):
        ls.assign(v, 1, Role.DOMINATED)
    rebuild_suffix(ls, k, BuildConfig(), random.Random(0))
    assert ls.k == k - 1


def test_build_config_validation():
    with pytest.raises(ValueError):
        BuildConfig(c=0.5)
    with pytest.raises(ValueError):
        BuildConfig(method="luby")
