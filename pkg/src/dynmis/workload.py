"""Edge-update streams: generators, text format and replay validation.

Text format, one record per line::

    n <vertex-count>
    + <u> <v>
    - <u> <v>
    # comment

Vertices are 1-based. The ``n`` record must precede any update.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

INSERT = "+"
DELETE = "-"


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str) -> None:
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class FeasibilityError(ValueError):
    def __init__(self, index: int, msg: str) -> None:
        super().__init__(f"op {index}: {msg}")
        self.index = index


@dataclass(frozen=True)
class StreamOp:
    kind: Literal["+", "-"]
    u: int
    v: int

    @property
    def edge(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass
class Stream:
    n: int
    ops: list[StreamOp] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)


class _EdgeBag:
    """Present edges with O(1) uniform sampling and removal."""

    def __init__(self) -> None:
        self.items: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, e) -> bool:
        return e in self.pos

    def add(self, e: tuple[int, int]) -> None:
        self.pos[e] = len(self.items)
        self.items.append(e)

    def remove(self, e: tuple[int, int]) -> None:
        idx = self.pos.pop(e)
        last = self.items.pop()
        if idx < len(self.items):
            self.items[idx] = last
            self.pos[last] = idx

    def choice(self, rng: random.Random) -> tuple[int, int]:
        return self.items[rng.randrange(len(self.items))]


def _random_absent(n: int, bag: _EdgeBag, rng: random.Random) -> tuple[int, int]:
    total = n * (n - 1) // 2
    if len(bag) * 2 < total:
        while True:
            u = rng.randint(1, n)
            v = rng.randint(1, n)
            if u != v:
                e = (u, v) if u < v else (v, u)
                if e not in bag:
                    return e
    absent = [(u, v) for u in range(1, n) for v in range(u + 1, n + 1) if (u, v) not in bag]
    return absent[rng.randrange(len(absent))]


def gen_random(n: int, ops: int, p_delete: float, seed: int) -> Stream:
    """Insert a random absent edge, or with probability ``p_delete`` delete a present one.

    Deletion is forced when the graph is complete; insertion when it is empty.
    """
    if not 0 <= p_delete < 1:
        raise ValueError(f"p_delete must be in [0, 1), got {p_delete}")
    if n < 2:
        raise ValueError("need at least 2 vertices to generate edges")
    rng = random.Random(seed)
    total = n * (n - 1) // 2
    bag = _EdgeBag()
    out: list[StreamOp] = []
    for _ in range(ops):
        if len(bag) and (len(bag) == total or rng.random() < p_delete):
            e = bag.choice(rng)
            bag.remove(e)
            out.append(StreamOp(DELETE, *e))
        else:
            e = _random_absent(n, bag, rng)
            bag.add(e)
            out.append(StreamOp(INSERT, *e))
    return Stream(n, out)


def gen_sliding_window(n: int, ops: int, window: int, seed: int) -> Stream:
    """Random insertions; beyond ``window`` live edges the oldest is deleted first."""
    if window < 1:
        raise ValueError("window must be >= 1")
    if n < 2:
        raise ValueError("need at least 2 vertices to generate edges")
    window = min(window, n * (n - 1) // 2)
    rng = random.Random(seed)
    bag = _EdgeBag()
    live: deque[tuple[int, int]] = deque()
    out: list[StreamOp] = []
    while len(out) < ops:
        if len(live) >= window:
            e = live.popleft()
            bag.remove(e)
            out.append(StreamOp(DELETE, *e))
            if len(out) == ops:
                break
        e = _random_absent(n, bag, rng)
        bag.add(e)
        live.append(e)
        out.append(StreamOp(INSERT, *e))
    return Stream(n, out)


def gen_densify(n: int, ops: int, target_m: int | None, seed: int) -> Stream:
    """Insert up to ``target_m`` edges, delete back down to zero, repeat.

    Sweeping density up and down forces factor-2 rebuilds in both directions.
    Default target is ``4n`` edges (capped at the complete graph).
    """
    if n < 2:
        raise ValueError("need at least 2 vertices to generate edges")
    total = n * (n - 1) // 2
    target = min(target_m if target_m is not None else 4 * n, total)
    if target < 1:
        raise ValueError("target_m must be >= 1")
    rng = random.Random(seed)
    bag = _EdgeBag()
    out: list[StreamOp] = []
    growing = True
    while len(out) < ops:
        if growing:
            e = _random_absent(n, bag, rng)
            bag.add(e)
            out.append(StreamOp(INSERT, *e))
            growing = len(bag) < target
        else:
            e = bag.choice(rng)
            bag.remove(e)
            out.append(StreamOp(DELETE, *e))
            growing = len(bag) == 0
    return Stream(n, out)


def serialize_stream(s: Stream) -> str:
    lines = [f"n {s.n}"]
    lines += [f"{op.kind} {op.u} {op.v}" for op in s.ops]
    return "\n".join(lines) + "\n"


def parse_stream(text: str, strict: bool = False) -> Stream:
    """Parse the text format. ``strict`` also replays for feasibility."""
    n: int | None = None
    ops: list[StreamOp] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "n":
            if n is not None:
                raise ParseError(lineno, "duplicate vertex-count record")
            if len(parts) != 2:
                raise ParseError(lineno, "expected 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad vertex count {parts[1]!r}") from None
            if n < 1:
                raise ParseError(lineno, "vertex count must be positive")
            continue
        if tag not in (INSERT, DELETE):
            raise ParseError(lineno, f"unknown record {tag!r}")
        if n is None:
            raise ParseError(lineno, "update before 'n' record")
        if len(parts) != 3:
            raise ParseError(lineno, f"expected '{tag} <u> <v>'")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(lineno, "vertex ids must be integers") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(lineno, f"vertex outside [1, {n}]")
        if u == v:
            raise ParseError(lineno, f"self-loop ({u}, {v})")
        ops.append(StreamOp(tag, u, v))
    if n is None:
        raise ParseError(0, "missing 'n' record")
    s = Stream(n, ops)
    if strict:
        validate_stream(s)
    return s


def infeasible_ops(s: Stream) -> list[int]:
    """Indices of ops that violate edge preconditions when replayed in order.

    Infeasible ops are treated as skipped, so they do not change the replay state.
    """
    present: set[tuple[int, int]] = set()
    bad: list[int] = []
    for idx, op in enumerate(s.ops):
        e = op.edge
        if op.kind == INSERT:
            if e in present:
                bad.append(idx)
            else:
                present.add(e)
        elif e in present:
            present.remove(e)
        else:
            bad.append(idx)
    return bad


def validate_stream(s: Stream) -> None:
    bad = infeasible_ops(s)
    if bad:
        op = s.ops[bad[0]]
        what = "duplicate insert" if op.kind == INSERT else "delete of absent edge"
        raise FeasibilityError(bad[0], f"{what} {op.edge}")


def final_edges(ops: Iterable[StreamOp]) -> set[tuple[int, int]]:
    present: set[tuple[int, int]] = set()
    for op in ops:
        if op.kind == INSERT:
            present.add(op.edge)
        else:
            present.discard(op.edge)
    return present
