"""Fully dynamic maximal independent set over a stream of edge updates."""

from dynmis.dynamic import DynamicMIS, InsertionKind, classify_insertion
from dynmis.graph import DuplicateEdge, DynamicGraph, MissingEdge, SelfLoop, new_graph
from dynmis.levels import Level, LevelSet, Role
from dynmis.offline import BuildConfig, build_rejection, build_subset, greedy_mis, rebuild_suffix
from dynmis.oracle import AuditReport, audit_levels, is_independent, is_maximal_independent
from dynmis.runs import AllRunsDead, PoolConfig, RunPool, new_pool
from dynmis.workload import Stream, StreamOp, gen_random, parse_stream, serialize_stream

__all__ = [
    "AllRunsDead", "AuditReport", "BuildConfig", "DuplicateEdge", "DynamicGraph", "DynamicMIS",
    "InsertionKind", "Level", "LevelSet", "MissingEdge", "PoolConfig", "Role", "RunPool",
    "SelfLoop", "Stream", "StreamOp", "audit_levels", "build_rejection", "build_subset",
    "classify_insertion", "gen_random", "greedy_mis", "is_independent", "is_maximal_independent",
    "new_graph", "new_pool", "parse_stream", "rebuild_suffix", "serialize_stream",
]
