"""Fixed-vertex-set undirected graph with neighbor-query accounting.

Every call that reads adjacency through the public interface is charged to
``graph.queries``: one unit per neighbor yielded by :meth:`DynamicGraph.neighbors`,
one unit for :meth:`degree` and one for :meth:`has_edge`. Verification code
reads :meth:`raw_adjacency` instead, which is free.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class QueryCounter:
    __slots__ = ("total",)

    def __init__(self) -> None:
        self.total = 0

    def charge(self, units: int = 1) -> None:
        self.total += units

    def reset(self) -> None:
        self.total = 0

    def __repr__(self) -> str:
        return f"QueryCounter({self.total})"


class DynamicGraph:
    """Undirected simple graph on vertices ``1..n``.

    Adjacency is kept as insertion-ordered dicts (used as ordered sets), so
    neighbor iteration order is a function of the mutation history only.
    """

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        self.n = n
        # index 0 unused so vertex ids index directly
        self._adj: list[dict[int, None]] = [{} for _ in range(n + 1)]
        self.edge_count = 0
        self.counter = QueryCounter()

    @property
    def queries(self) -> int:
        return self.counter.total

    @property
    def max_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} outside [1, {self.n}]")

    def insert_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in self._adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) already present")
        self._adj[u][v] = None
        self._adj[v][u] = None
        self.edge_count += 1

    def delete_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v or v not in self._adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not present")
        del self._adj[u][v]
        del self._adj[v][u]
        self.edge_count -= 1

    def neighbors(self, v: int) -> Iterator[int]:
        """Yield the neighbors of ``v``, charging one query per neighbor."""
        counter = self.counter
        for w in self._adj[v]:
            counter.total += 1
            yield w

    def neighbor_list(self, v: int) -> list[int]:
        """Materialized :meth:`neighbors`; same cost, less generator overhead."""
        adj = self._adj[v]
        self.counter.total += len(adj)
        return list(adj)

    def degree(self, v: int) -> int:
        self.counter.total += 1
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self.counter.total += 1
        return v in self._adj[u]

    def raw_adjacency(self, v: int) -> dict[int, None]:
        """Uncounted adjacency view. Verification only; do not mutate."""
        return self._adj[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Uncounted iteration over edges as ``(u, v)`` with ``u < v``."""
        for u in range(1, self.n + 1):
            for v in self._adj[u]:
                if u < v:
                    yield u, v

    def copy(self) -> "DynamicGraph":
        """Structural copy with a fresh counter."""
        g = DynamicGraph(self.n)
        g._adj = [dict(a) for a in self._adj]
        g.edge_count = self.edge_count
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DynamicGraph":
        g = cls(n)
        for u, v in edges:
            g.insert_edge(u, v)
        return g

    def __repr__(self) -> str:
        return f"DynamicGraph(n={self.n}, m={self.edge_count}, queries={self.queries})"


def new_graph(n: int) -> DynamicGraph:
    return DynamicGraph(n)
