"""Empirical distributions behind the offline-builder guarantees.

Prints, for seeded G(n, m) graphs: sample-size / induced-edge ratios of the
subset sampler, greedy independent-set size relative to the sample,
level-1 neighborhood size, level-2 survivor degree, and the heavy-promotion
classification rate against its envelope.

    python3 scripts/builder_stats.py --trials 400
"""

import argparse
import math
import random

import numpy as np

from dynmis.dynamic import InsertionKind, classify_insertion
from dynmis.graph import DynamicGraph
from dynmis.offline import BuildConfig, build_rejection, subset_epoch
from dynmis.oracle import induced_edge_count


def gnm(n, m, seed):
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)]
    return DynamicGraph.from_edges(n, rng.sample(pairs, m))


def describe(name, values):
    a = np.asarray(values, dtype=float)
    q = np.percentile(a, [5, 50, 95])
    print(f"  {name:<28} min={a.min():.3f} p5={q[0]:.3f} median={q[1]:.3f} "
          f"p95={q[2]:.3f} max={a.max():.3f}")


def sampling(n, m, trials, c):
    g = gnm(n, m, 3)
    order = list(g.vertices())
    alive = set(order)
    sizes, density, ratio, joint = [], [], [], 0
    for t in range(trials):
        ep = subset_epoch(g, order, alive, m, random.Random(t))
        s = len(ep.sample)
        e = induced_edge_count(g, ep.sample)
        sizes.append(s / (n * n / (4 * m)))
        density.append(e / max(s, 1))
        ratio.append(len(ep.independent) / max(s, 1))
        joint += s >= n * n / (4 * m) and e <= 16 * s
    print(f"subset sampling on G({n}, {m}), {trials} trials")
    describe("|S| / (n^2 / 4m)", sizes)
    describe("|E[S]| / |S|", density)
    describe("|I| / |S|", ratio)
    print(f"  joint event frequency        {joint / trials:.3f}")


def neighborhood(n, m, trials, c):
    g = gnm(n, m, 5)
    frac = []
    for t in range(trials):
        ls = build_rejection(g, BuildConfig(c=c, seed=t))
        frac.append(len(ls[1].dominated) / n)
    print(f"level-1 neighborhood on G({n}, {m}), {trials} builds")
    describe("|N(I_1)| / n", frac)
    print(f"  threshold 1/900 = {1 / 900:.5f}")


def survivor_degree(n, m, trials, c):
    g = gnm(n, m, 6)
    bound = 3 * c * math.log2(n) * m / n
    worst = []
    for t in range(trials):
        ls = build_rejection(g, BuildConfig(c=c, seed=t))
        level = ls.level
        worst.append(max((sum(1 for w in g.raw_adjacency(v) if level[w] >= 2)
                          for v in g.vertices() if level[v] >= 2), default=0))
    print(f"level-2 survivor degree on G({n}, {m}), {trials} builds, bound {bound:.0f}")
    describe("max degree in G_2", worst)
    describe("max degree / (m/n)", [w / (m / n) for w in worst])


def heavy_rate(n, m, samples, c):
    g = gnm(n, m, 7)
    ls = build_rejection(g, BuildConfig(c=c, seed=7))
    ratios = [lvl.n / lvl.m for lvl in ls if lvl.m > 0]
    envelope = sum(2 / c ** 2 * a * b for a in ratios for b in ratios)
    rng = random.Random(7)
    heavy = done = 0
    while done < samples:
        u, v = rng.sample(range(1, n + 1), 2)
        if v in g.raw_adjacency(u):
            continue
        done += 1
        heavy += classify_insertion(ls, u, v).kind is InsertionKind.HEAVY_PROMOTION
    print(f"heavy-promotion classification on G({n}, {m}), {samples} absent edges")
    print(f"  levels={ls.k} |MIS|={len(ls.mis())} observed={heavy / done:.5f} "
          f"sum bound={envelope:.5f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--c", type=float, default=34.0)
    args = ap.parse_args()
    n = args.n
    sampling(n, 8 * n, args.trials, args.c)
    neighborhood(n, 4 * n, args.trials, args.c)
    survivor_degree(n, 16 * n, max(1, args.trials // 4), args.c)
    heavy_rate(n, 16 * n, 10_000, args.c)


if __name__ == "__main__":
    main()
