"""Amortized survivor queries versus n, at fixed and density-matched stream lengths.

With a fixed number of updates, small n ends up dense and large n sparse, and
the per-update cost follows the average degree. Scaling the stream length
with n (``--ops-per-vertex``) holds the final average degree roughly constant
and isolates the dependence on n.

    python3 scripts/scaling.py --n-list 256,1024,4096 --ops 20000 --ops-per-vertex 20
"""

import argparse

from dynmis.cli import format_scaling_csv, scaling_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-list", default="256,1024,4096")
    ap.add_argument("--ops", type=int, default=20_000)
    ap.add_argument("--ops-per-vertex", type=int, default=20)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--p-delete", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    n_list = [int(x) for x in args.n_list.split(",")]

    print(f"# fixed stream length: {args.ops} updates")
    rows = scaling_rows(n_list, args.ops, args.trials, args.seed, args.p_delete)
    print(format_scaling_csv(rows), end="")
    ratios = [r["mean_ratio_log3"] for r in rows]
    print(f"# spread {max(ratios) / min(ratios):.2f}x")

    print(f"# density matched: {args.ops_per_vertex} * n updates")
    matched = []
    for n in n_list:
        matched += scaling_rows([n], args.ops_per_vertex * n, args.trials, args.seed,
                                args.p_delete)
    print(format_scaling_csv(matched), end="")
    ratios = [r["mean_ratio_log3"] for r in matched]
    print(f"# spread {max(ratios) / min(ratios):.2f}x")


if __name__ == "__main__":
    main()
