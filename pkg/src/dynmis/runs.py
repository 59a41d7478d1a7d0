"""Independent replicas of the dynamic structure with query budgets.

Each run owns a private graph copy and RNG. After every update a run whose
query count since its last (re)initialization exceeds
``budget_scale * 3 c z ceil(log2 n)^e`` is stopped; the reported MIS comes
from the lowest-indexed surviving run.
"""

from __future__ import annotations

import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from dynmis.dynamic import DynamicMIS, EngineStats
from dynmis.graph import DynamicGraph
from dynmis.offline import BuildConfig
from dynmis.workload import INSERT, StreamOp

log = logging.getLogger(__name__)


class AllRunsDead(RuntimeError):
    pass


def log2_ceil(n: int) -> int:
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


@dataclass
class PoolConfig:
    delta: float = 0.1
    c: float = 34.0
    y_override: int | None = None
    reset_period: int | None = None  # None: n**2
    budget_exponent: int = 3
    budget_scale: float = 1.0
    seed: int = 0
    level_cap: int | None = None
    parallel: bool = False

    def __post_init__(self) -> None:
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.budget_exponent not in (2, 3):
            raise ValueError("budget_exponent must be 2 or 3")
        if self.y_override is not None and self.y_override < 1:
            raise ValueError("run count must be positive")
        if self.reset_period is not None and self.reset_period < 1:
            raise ValueError("reset period must be positive")
        if self.budget_scale < 0:
            raise ValueError("budget_scale must be non-negative")

    def runs_for(self, n: int) -> int:
        if self.y_override is not None:
            return self.y_override
        return max(1, math.ceil(4 * math.log2(n / self.delta)))

    def budget(self, n: int, z: int) -> float:
        return self.budget_scale * 3 * self.c * z * log2_ceil(n) ** self.budget_exponent


@dataclass
class RunState:
    index: int
    seed: int
    engine: DynamicMIS
    alive: bool = True
    total_queries: int = 0
    stats: EngineStats = field(default_factory=EngineStats)

    @property
    def budget_queries(self) -> int:
        return self.engine.graph.queries


@dataclass
class UpdateRecord:
    z: int
    alive_count: int
    survivor_index: int
    max_run_queries: int
    budget: float
    kind: str
    survivor_delta: int
    max_delta: int
    rebuilt: bool
    revived: bool = False
    reset: bool = False

    def line(self) -> str:
        return (f"{self.z} {self.alive_count} {self.survivor_index} "
                f"{self.max_run_queries} {self.budget:.0f}")


class RunPool:
    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 cfg: PoolConfig | None = None) -> None:
        self.cfg = cfg or PoolConfig()
        self.n = n
        # pool-side copy of the current graph; runs are cloned from it on (re)init
        self.graph = DynamicGraph.from_edges(n, edges)
        self.y = self.cfg.runs_for(n)
        self.reset_period = self.cfg.reset_period or n * n
        self.z = 0
        self.z_epoch = 0
        self.generation = 0
        self.all_runs_dead_count = 0
        self.reset_count = 0
        self.runs = [self._spawn(r, None) for r in range(1, self.y + 1)]
        self._executor = ThreadPoolExecutor() if self.cfg.parallel else None

    def _spawn(self, r: int, previous: RunState | None) -> RunState:
        seed = self.cfg.seed + self.generation * self.y + r
        g = self.graph.copy()
        build_cfg = BuildConfig(c=self.cfg.c, seed=seed, level_cap=self.cfg.level_cap)
        engine = DynamicMIS(g, build_cfg, random.Random(seed))
        build_cost = g.queries
        g.counter.reset()
        if previous is None:
            run = RunState(r, seed, engine)
        else:
            run = previous
            run.seed, run.engine, run.alive = seed, engine, True
        engine.stats = run.stats
        run.total_queries += build_cost
        return run

    def _rebuild_all(self) -> None:
        self.generation += 1
        self.z_epoch = 0
        self.runs = [self._spawn(run.index, run) for run in self.runs]

    @property
    def alive(self) -> list[RunState]:
        return [r for r in self.runs if r.alive]

    def _apply_one(self, run: RunState, op: StreamOp) -> tuple[str, bool, int]:
        g = run.engine.graph
        before = g.queries
        if op.kind == INSERT:
            kind, rebuilt = run.engine.insert(op.u, op.v)
        else:
            kind, rebuilt = run.engine.delete(op.u, op.v)
        delta = g.queries - before
        run.total_queries += delta
        return kind, rebuilt, delta

    def apply_update(self, op: StreamOp) -> UpdateRecord:
        if op.kind == INSERT:
            self.graph.insert_edge(op.u, op.v)
        else:
            self.graph.delete_edge(op.u, op.v)
        self.z += 1
        self.z_epoch += 1
        active = self.alive
        if not active:
            raise AllRunsDead("no surviving run")
        if self._executor is not None:
            results = list(self._executor.map(lambda r: self._apply_one(r, op), active))
        else:
            results = [self._apply_one(r, op) for r in active]
        by_index = {run.index: res for run, res in zip(active, results)}
        max_delta = max(d for _, _, d in results)
        max_run_queries = max(r.budget_queries for r in active)
        budget = self.cfg.budget(self.n, self.z_epoch)
        for run in active:
            if run.budget_queries > budget:
                run.alive = False
                log.debug("run %d stopped at z=%d (%d > %.0f)", run.index, self.z,
                          run.budget_queries, budget)
        revived = reset = False
        if not any(r.alive for r in self.runs):
            self.all_runs_dead_count += 1
            log.warning("all %d runs over budget at z=%d; rebuilding", self.y, self.z)
            self._rebuild_all()
            revived = True
        elif self.z % self.reset_period == 0:
            self.reset_count += 1
            self._rebuild_all()
            reset = True
        survivor = self.survivor()
        survivor_kind, survivor_rebuilt, survivor_delta = by_index.get(survivor.index, results[0])
        return UpdateRecord(
            z=self.z,
            alive_count=len(self.alive),
            survivor_index=survivor.index,
            max_run_queries=max_run_queries,
            budget=budget,
            kind=survivor_kind,
            survivor_delta=survivor_delta,
            max_delta=max_delta,
            rebuilt=survivor_rebuilt,
            revived=revived,
            reset=reset,
        )

    def survivor(self) -> RunState:
        for run in self.runs:
            if run.alive:
                return run
        raise AllRunsDead("no surviving run")

    def survivor_mis(self) -> set[int]:
        return self.survivor().engine.mis()

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None


def new_pool(n: int, edges: Iterable[tuple[int, int]] = (), cfg: PoolConfig | None = None) -> RunPool:
    return RunPool(n, edges, cfg)
