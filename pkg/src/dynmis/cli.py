"""Command-line harness: ``gen``, ``run``, ``scaling`` and ``verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from dynmis.oracle import audit_levels, is_maximal_independent
from dynmis.runs import PoolConfig, RunPool, log2_ceil
from dynmis.workload import (
    DELETE,
    INSERT,
    ParseError,
    Stream,
    gen_densify,
    gen_random,
    gen_sliding_window,
    infeasible_ops,
    parse_stream,
    serialize_stream,
)

log = logging.getLogger("dynmis")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VIOLATION, EXIT_BAD_INPUT = 0, 1, 2


def default_seed() -> int:
    raw = os.environ.get("DYNMIS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        print(f"error: DYNMIS_SEED must be an integer, got {raw!r}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


@dataclass
class StreamStats:
    n: int
    runs: int
    z: int = 0
    skipped_ops: int = 0
    survivor_index: int = 1
    survivor_queries: int = 0
    per_run_queries: list[int] = field(default_factory=list)
    max_single_update_queries: int = 0
    rebuild_count: int = 0
    heavy_promotion_count: int = 0
    demotion_count: int = 0
    forced_fallback_count: int = 0
    events: dict[str, int] = field(default_factory=dict)
    all_runs_dead_count: int = 0
    reset_count: int = 0
    verifications: int = 0
    mis_size: int = 0
    audit: dict | None = None
    wall_time: float = 0.0

    @property
    def amortized_queries(self) -> float:
        return self.survivor_queries / self.z if self.z else 0.0

    def to_json(self, cfg: PoolConfig) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "z": self.z,
            "runs": self.runs,
            "config": asdict(cfg),
            "skipped_ops": self.skipped_ops,
            "survivor_index": self.survivor_index,
            "total_queries": {
                "survivor": self.survivor_queries,
                "per_run": self.per_run_queries,
                "max_run": max(self.per_run_queries, default=0),
            },
            "amortized_queries": self.amortized_queries,
            "amortized_undefined": self.z == 0,
            "max_single_update_queries": self.max_single_update_queries,
            "rebuild_count": self.rebuild_count,
            "heavy_promotion_count": self.heavy_promotion_count,
            "demotion_count": self.demotion_count,
            "forced_fallback_count": self.forced_fallback_count,
            "events": dict(sorted(self.events.items())),
            "all_runs_dead_count": self.all_runs_dead_count,
            "reset_count": self.reset_count,
            "verifications": self.verifications,
            "mis_size": self.mis_size,
            "audit": self.audit,
            "wall_time": self.wall_time,
        }

    def summary(self) -> str:
        amortized = "undefined (empty stream)" if self.z == 0 else f"{self.amortized_queries:.2f}"
        return "\n".join([
            f"n={self.n} runs={self.runs} updates={self.z} skipped={self.skipped_ops}",
            f"survivor run {self.survivor_index}: {self.survivor_queries} queries, "
            f"amortized {amortized}, max single update {self.max_single_update_queries}",
            f"rebuilds={self.rebuild_count} heavy_promotions={self.heavy_promotion_count} "
            f"all_runs_dead={self.all_runs_dead_count} resets={self.reset_count}",
            f"verifications={self.verifications} mis_size={self.mis_size} "
            f"wall_time={self.wall_time:.2f}s",
        ])


class InvariantViolation(RuntimeError):
    def __init__(self, z: int, report) -> None:
        super().__init__(f"invariant violation after update {z}:\n{report}")
        self.z = z
        self.report = report


def _verify(pool: RunPool, stats: StreamStats) -> None:
    run = pool.survivor()
    report = audit_levels(run.engine.graph, run.engine.ls)
    if report.passed and not is_maximal_independent(run.engine.graph, run.engine.mis()):
        report.add("maximality", run.index)
    stats.verifications += 1
    stats.audit = report.to_dict()
    if not report.passed:
        raise InvariantViolation(pool.z, report)


def replay(
    stream: Stream,
    cfg: PoolConfig,
    verify_every: int = 0,
    event_log: TextIO | None = None,
    pool_log: TextIO | None = None,
) -> StreamStats:
    """Replay ``stream`` through a fresh pool; infeasible ops are skipped.

    Raises :class:`InvariantViolation` when a scheduled verification fails;
    the partially filled stats are attached as ``exc.stats``.
    """
    started = time.perf_counter()
    pool = RunPool(stream.n, (), cfg)
    stats = StreamStats(n=stream.n, runs=pool.y)
    skip = set(infeasible_ops(stream))
    try:
        for idx, op in enumerate(stream.ops):
            if idx in skip:
                stats.skipped_ops += 1
                what = "duplicate insert" if op.kind == INSERT else "delete of absent edge"
                log.warning("skipping op %d: %s (%d, %d)", idx, what, op.u, op.v)
                continue
            rec = pool.apply_update(op)
            stats.max_single_update_queries = max(stats.max_single_update_queries, rec.max_delta)
            if event_log is not None:
                after = pool.survivor().total_queries
                event_log.write(f"{rec.z} {rec.kind} {after - rec.survivor_delta} {after} "
                                f"{int(rec.rebuilt)}\n")
            if pool_log is not None:
                pool_log.write(rec.line() + "\n")
            if verify_every and pool.z % verify_every == 0:
                _verify(pool, stats)
        if verify_every and pool.z % verify_every != 0:
            _verify(pool, stats)
    except InvariantViolation as exc:
        exc.stats = stats
        raise
    finally:
        _collect(pool, stats)
        stats.wall_time = time.perf_counter() - started
        pool.close()
    return stats


def _collect(pool: RunPool, stats: StreamStats) -> None:
    survivor = pool.survivor()
    stats.z = pool.z
    stats.survivor_index = survivor.index
    stats.survivor_queries = survivor.total_queries
    stats.per_run_queries = [r.total_queries for r in pool.runs]
    stats.rebuild_count = survivor.stats.rebuilds
    stats.heavy_promotion_count = survivor.stats.heavy_promotions
    stats.demotion_count = survivor.stats.demotions
    stats.forced_fallback_count = survivor.stats.forced_fallbacks
    stats.events = dict(survivor.stats.events)
    stats.all_runs_dead_count = pool.all_runs_dead_count
    stats.reset_count = pool.reset_count
    stats.mis_size = len(survivor.engine.mis())


def _pool_config(args: argparse.Namespace) -> PoolConfig:
    return PoolConfig(
        delta=args.delta,
        c=args.c,
        y_override=args.runs,
        reset_period=args.reset_period,
        budget_exponent=args.budget_exponent,
        budget_scale=args.budget_scale,
        seed=args.seed,
        parallel=args.parallel_runs,
    )


def _read_stream(path: str) -> Stream:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_stream(text)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.model == "random":
        stream = gen_random(args.n, args.ops, args.p_delete, args.seed)
    elif args.model == "window":
        stream = gen_sliding_window(args.n, args.ops, args.window, args.seed)
    else:
        stream = gen_densify(args.n, args.ops, args.target_m, args.seed)
    text = serialize_stream(stream)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        stream = _read_stream(args.stream)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    cfg = _pool_config(args)
    verify_every = args.verify_every
    event_log = open(args.event_log, "w") if args.event_log else None
    pool_log = open(args.pool_log, "w") if args.pool_log else None
    code = EXIT_OK
    try:
        stats = replay(stream, cfg, verify_every, event_log, pool_log)
    except InvariantViolation as exc:
        print(str(exc), file=sys.stderr)
        stats = exc.stats
        code = EXIT_VIOLATION
    finally:
        for fh in (event_log, pool_log):
            if fh is not None:
                fh.close()
    payload = stats.to_json(cfg)
    if args.stats:
        Path(args.stats).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(stats.summary())
    return code


def scaling_rows(n_list: Sequence[int], ops: int, trials: int, seed: int,
                 p_delete: float = 0.3, runs: int | None = 1, c: float = 34.0) -> list[dict]:
    rows = []
    for n in n_list:
        amortized = []
        for t in range(trials):
            trial_seed = seed + 1000 * t + n
            stream = gen_random(n, ops, p_delete, trial_seed)
            cfg = PoolConfig(c=c, y_override=runs, seed=trial_seed)
            amortized.append(replay(stream, cfg).amortized_queries)
        mean = float(np.mean(amortized))
        rows.append({
            "n": n,
            "trials": trials,
            "mean_amortized": mean,
            "p95_amortized": float(np.percentile(amortized, 95)),
            "mean_ratio_log3": mean / log2_ceil(n) ** 3,
        })
    return rows


def format_scaling_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["n", "trials", "mean_amortized", "p95_amortized",
                                             "mean_ratio_log3"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.6g}" if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def cmd_scaling(args: argparse.Namespace) -> int:
    rows = scaling_rows(args.n_list, args.ops_per_n, args.trials, args.seed, args.p_delete,
                        args.runs, args.c)
    text = format_scaling_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        stream = _read_stream(args.stream)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    bad = infeasible_ops(stream)
    inserts = sum(op.kind == INSERT for op in stream.ops)
    deletes = sum(op.kind == DELETE for op in stream.ops)
    print(f"n={stream.n} ops={len(stream.ops)} inserts={inserts} deletes={deletes} "
          f"infeasible={len(bad)}")
    for idx in bad[:10]:
        op = stream.ops[idx]
        print(f"  op {idx}: {op.kind} {op.u} {op.v}")
    return EXIT_VIOLATION if bad else EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 2:
        raise argparse.ArgumentTypeError("vertex counts must be >= 2")
    return values


def _probability(text: str) -> float:
    p = float(text)
    if not 0 <= p < 1:
        raise argparse.ArgumentTypeError("must be in [0, 1)")
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynmis", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    seed = default_seed()

    gen = sub.add_parser("gen", help="generate a feasible update stream")
    gen.add_argument("--model", choices=["random", "window", "densify"], default="random")
    gen.add_argument("--n", type=_positive, required=True)
    gen.add_argument("--ops", type=_non_negative, required=True)
    gen.add_argument("--p-delete", type=_probability, default=0.3)
    gen.add_argument("--window", type=_positive, default=100)
    gen.add_argument("--target-m", type=_positive, default=None)
    gen.add_argument("--seed", type=int, default=seed)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    run = sub.add_parser("run", help="replay a stream through the run pool")
    run.add_argument("--stream", required=True)
    run.add_argument("--seed", type=int, default=seed)
    run.add_argument("--c", type=float, default=34.0)
    run.add_argument("--delta", type=float, default=0.1)
    run.add_argument("--runs", type=_positive, default=None)
    run.add_argument("--budget-exponent", type=int, choices=[2, 3], default=3)
    run.add_argument("--budget-scale", type=float, default=1.0)
    run.add_argument("--reset-period", type=_positive, default=None)
    run.add_argument("--verify-every", type=_non_negative, default=100)
    run.add_argument("--event-log")
    run.add_argument("--pool-log")
    run.add_argument("--stats")
    run.add_argument("--parallel-runs", action="store_true")
    run.set_defaults(func=cmd_run)

    sc = sub.add_parser("scaling", help="amortized queries across vertex counts (CSV)")
    sc.add_argument("--n-list", type=_int_list, default=[256, 1024, 4096])
    sc.add_argument("--ops-per-n", type=_positive, default=20000)
    sc.add_argument("--trials", type=_positive, default=5)
    sc.add_argument("--p-delete", type=_probability, default=0.3)
    sc.add_argument("--runs", type=_positive, default=1)
    sc.add_argument("--c", type=float, default=34.0)
    sc.add_argument("--seed", type=int, default=seed)
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_scaling)

    ver = sub.add_parser("verify", help="parse and feasibility-check a stream file")
    ver.add_argument("stream")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
