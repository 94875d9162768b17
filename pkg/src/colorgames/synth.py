"""Witness path synthesis.

A loop set with the right combined color rates turns into an infinite
path by visiting the loops in rounds: round i repeats loop j exactly
i * c_j times and then moves to the next loop along a fixed connector.
The connectors are traversed once per round while the loop repetitions
grow linearly, so their color contribution washes out and the emitted
path attains the target rates in the limit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .arena import ColoredArena, ContractError, Edge, FinitePath, color_counts
from .graphs import LimitMatrix, LoopSet, strongly_connected_components


@dataclass(frozen=True)
class PathSchedule:
    """Loops, repetition coefficients and inter-loop connectors.

    Round i (i >= 1) emits loops[0]^(i*c0) conn[0] loops[1]^(i*c1)
    conn[1] ... loops[h-1]^(i*c_{h-1}) conn[h-1]; every round is a closed
    walk through the start node of the first loop.
    """

    loops: tuple[FinitePath, ...]
    coeffs: tuple[int, ...]
    connectors: tuple[tuple[Edge, ...], ...]

    def __post_init__(self):
        h = len(self.loops)
        if h == 0:
            raise ContractError("schedule needs at least one loop")
        if len(self.coeffs) != h or len(self.connectors) != h:
            raise ContractError("loops, coeffs and connectors must align")
        if any(c < 1 for c in self.coeffs):
            raise ContractError("coefficients must be positive")
        for j, loop in enumerate(self.loops):
            if not loop.is_cycle():
                raise ContractError(f"loop {j} is not a cycle")
            conn = self.connectors[j]
            here = loop.end
            for e in conn:
                if e.src != here:
                    raise ContractError(f"connector {j} breaks adjacency")
                here = e.dst
            nxt = self.loops[(j + 1) % h]
            if here != nxt.start:
                raise ContractError(
                    f"connector {j} does not reach the next loop")

    @property
    def start(self) -> str:
        return self.loops[0].start

    def loop_weight(self) -> int:
        """Total loop edges per unit round: n = sum c_j * |loop_j|."""
        return sum(c * len(p) for p, c in zip(self.loops, self.coeffs))

    def connector_weight(self) -> int:
        """Connector edges per round: m = sum |conn_j|."""
        return sum(len(c) for c in self.connectors)

    def round_edges(self, i: int) -> list[Edge]:
        if i < 1:
            raise ContractError("rounds are numbered from 1")
        out: list[Edge] = []
        for loop, c, conn in zip(self.loops, self.coeffs, self.connectors):
            for _ in range(i * c):
                out.extend(loop.edges)
            out.extend(conn)
        return out

    def round_length(self, i: int) -> int:
        return self.connector_weight() + i * self.loop_weight()

    def boundary(self, i: int) -> int:
        """Prefix length at the end of round i."""
        n, m = self.loop_weight(), self.connector_weight()
        return i * m + n * i * (i + 1) // 2

    def to_json_dict(self) -> dict:
        return {
            "start": self.start,
            "loops": [[e.triple() for e in p.edges] for p in self.loops],
            "coeffs": list(self.coeffs),
            "connectors": [[e.triple() for e in conn]
                           for conn in self.connectors],
        }


class PathStream:
    """Single-consumer cursor over an unbounded edge sequence."""

    def __init__(self, start: str, edges: Iterator[Edge],
                 bound: int | None = None,
                 schedule: PathSchedule | None = None):
        self.start = start
        self.bound = bound
        self.schedule = schedule
        self._edges = edges

    def __iter__(self) -> Iterator[Edge]:
        return self._edges

    def __next__(self) -> Edge:
        return next(self._edges)

    def take(self, n: int) -> list[Edge]:
        out = []
        for _ in range(n):
            out.append(next(self._edges))
        return out


def build_schedule(loop_set: LoopSet, arena: ColoredArena) -> PathSchedule:
    """Connect the loops of a loop set with shortest paths inside their
    strongly connected component."""
    if not loop_set.loops:
        raise ContractError("empty loop set")
    scc = strongly_connected_components(arena)
    comps = {scc.comp_of[p.start] for p, _ in loop_set.loops}
    if len(comps) > 1:
        raise ContractError("loops are not mutually reachable")
    ci = comps.pop()
    members = set(scc.components[ci])
    loops = tuple(p for p, _ in loop_set.loops)
    coeffs = tuple(c for _, c in loop_set.loops)
    h = len(loops)
    connectors = []
    for j in range(h):
        src = loops[j].end
        dst = loops[(j + 1) % h].start
        connectors.append(_shortest_path(arena, members, src, dst))
    return PathSchedule(loops, coeffs, tuple(connectors))


def _shortest_path(arena: ColoredArena, members: set[str], src: str,
                   dst: str) -> tuple[Edge, ...]:
    """Breadth-first shortest path within one component; ties resolved
    toward the smallest node index."""
    if src == dst:
        return ()
    parent: dict[str, Edge] = {}
    seen = {src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        candidates = []
        for eid in arena.out_edge_ids(u):
            e = arena.edges[eid]
            if e.dst in members and e.dst not in seen:
                candidates.append((arena.node_index[e.dst], eid, e))
        for _, _, e in sorted(candidates):
            if e.dst in seen:
                continue
            seen.add(e.dst)
            parent[e.dst] = e
            if e.dst == dst:
                path = []
                node = dst
                while node != src:
                    edge = parent[node]
                    path.append(edge)
                    node = edge.src
                path.reverse()
                return tuple(path)
            queue.append(e.dst)
    raise ContractError(f"no path from {src!r} to {dst!r} inside the "
                        "component")


def stream(schedule: PathSchedule) -> PathStream:
    """Lazily emit the infinite path of a schedule, one edge at a time."""
    def generate() -> Iterator[Edge]:
        i = 1
        while True:
            for loop, c, conn in zip(schedule.loops, schedule.coeffs,
                                     schedule.connectors):
                for _ in range(i * c):
                    yield from loop.edges
                yield from conn
            i += 1
    return PathStream(schedule.start, generate(), schedule=schedule)


def measure_convergence(path_stream: PathStream, n: int,
                        limit: LimitMatrix) -> Fraction:
    """Largest entrywise gap between observed pairwise difference rates
    at prefix length n and the target rates, as an exact rational."""
    if n < 1:
        raise ContractError("prefix length must be positive")
    k = limit.k
    counts = [0] * k
    taken = 0
    for e in path_stream:
        counts[e.color - 1] += 1
        taken += 1
        if taken == n:
            break
    if taken < n:
        raise ContractError("stream ended before the requested prefix")
    worst = Fraction(0)
    for a in range(k):
        for b in range(a + 1, k):
            gap = abs(Fraction(counts[a] - counts[b], n) - limit.rows[a][b])
            if gap > worst:
                worst = gap
    return worst


def convergence_profile(path_stream: PathStream, checkpoints,
                        limit: LimitMatrix) -> list[tuple[int, Fraction]]:
    """Deviations at several prefix lengths from a single pass."""
    marks = sorted(set(checkpoints))
    if not marks or marks[0] < 1:
        raise ContractError("checkpoints must be positive")
    k = limit.k
    counts = [0] * k
    out = []
    pos = 0
    it = iter(path_stream)
    for mark in marks:
        while pos < mark:
            counts[next(it).color - 1] += 1
            pos += 1
        worst = Fraction(0)
        for a in range(k):
            for b in range(a + 1, k):
                gap = abs(Fraction(counts[a] - counts[b], pos)
                          - limit.rows[a][b])
                if gap > worst:
                    worst = gap
        out.append((mark, worst))
    return out


def bounded_witness_stream(walk: FinitePath, access: tuple[Edge, ...],
                           k: int) -> PathStream:
    """Access path followed by a zero-difference closed walk repeated
    forever; the stream's ``bound`` is an exact cap on every prefix's
    pairwise differences."""
    if not walk.is_cycle():
        raise ContractError("witness walk must be closed")
    counts = color_counts(walk.colors(), k)
    if any(c != counts[0] for c in counts):
        raise ContractError("witness walk has a nonzero difference matrix")
    here = access[0].src if access else walk.start
    for e in access:
        if e.src != here:
            raise ContractError("access path breaks adjacency")
        here = e.dst
    if here != walk.start:
        raise ContractError("access path does not reach the walk")

    # prefix differences repeat after the first walk period
    running = [0] * k
    bound = 0
    for e in list(access) + list(walk.edges):
        running[e.color - 1] += 1
        spread = max(running) - min(running)
        if spread > bound:
            bound = spread

    def generate() -> Iterator[Edge]:
        yield from access
        while True:
            yield from walk.edges

    start = access[0].src if access else walk.start
    return PathStream(start, generate(), bound=bound)
