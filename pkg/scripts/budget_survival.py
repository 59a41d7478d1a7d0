"""How often the run pool loses every run, across budget exponents and scales.

    python3 scripts/budget_survival.py --n 256 --ops 5000 --trials 20
"""

import argparse

from dynmis.runs import PoolConfig, RunPool
from dynmis.workload import gen_random


def trial(n, ops, seed, exponent, scale):
    stream = gen_random(n, ops, 0.3, 800 + seed)
    pool = RunPool(n, (), PoolConfig(seed=seed, budget_exponent=exponent, budget_scale=scale))
    min_alive = pool.y
    peak = 0.0
    for op in stream.ops:
        rec = pool.apply_update(op)
        min_alive = min(min_alive, rec.alive_count)
        peak = max(peak, rec.max_run_queries / rec.budget if rec.budget else float("inf"))
    return pool.all_runs_dead_count, min_alive, peak


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--ops", type=int, default=5000)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--scales", default="1,0.01,0.001")
    args = ap.parse_args()
    print("exponent,scale,trials_without_revive,mean_min_alive,max_usage")
    for exponent in (3, 2):
        for scale in (float(s) for s in args.scales.split(",")):
            results = [trial(args.n, args.ops, t, exponent, scale) for t in range(args.trials)]
            clean = sum(dead == 0 for dead, _, _ in results)
            mean_alive = sum(a for _, a, _ in results) / len(results)
            usage = max(p for _, _, p in results)
            print(f"{exponent},{scale:g},{clean},{mean_alive:.1f},{usage:.4f}")


if __name__ == "__main__":
    main()
