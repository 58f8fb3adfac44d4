"""Trails, partitions of the edge set into trails, and their classification."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DocumentError, PartitionError
from .graph import CubicMultigraph, Dart


@dataclass(frozen=True)
class Trail:
    """An alternating walk ``v0 e1 v1 ... ek vk``.

    Vertices are stored explicitly because a loop or a parallel pair makes the
    edge sequence alone ambiguous about direction. A length-0 trail (one
    vertex, no edge) is only used as an intermediate piece.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a trail has one more vertex than edges")

    @classmethod
    def walk(cls, g: CubicMultigraph, start: int, edges: Sequence[int]) -> "Trail":
        """Follow ``edges`` from ``start``; each step leaves by the current vertex."""
        verts = [start]
        for e in edges:
            verts.append(g.other_end(e, verts[-1]))
        return cls(tuple(verts), tuple(edges))

    @classmethod
    def point(cls, v: int) -> "Trail":
        return cls((v,), ())

    def __len__(self):
        return len(self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def is_odd(self) -> bool:
        return len(self.edges) % 2 == 1

    @property
    def is_closed(self) -> bool:
        return len(self.edges) > 0 and self.vertices[0] == self.vertices[-1]

    def reversed(self) -> "Trail":
        return Trail(self.vertices[::-1], self.edges[::-1])

    def canonical(self) -> "Trail":
        r = self.reversed()
        return min(self, r, key=lambda t: (t.vertices, t.edges))

    def oriented_to_end_at(self, v: int) -> "Trail":
        if self.end == v:
            return self
        if self.start == v:
            return self.reversed()
        raise ValueError(f"vertex {v} is not an end of the trail")

    def then(self, other: "Trail") -> "Trail":
        """Concatenate on the common vertex ``self.end == other.start``."""
        if self.end != other.start:
            raise ValueError(f"cannot join trail ending at {self.end} with one starting at {other.start}")
        return Trail(self.vertices + other.vertices[1:], self.edges + other.edges)

    def sub(self, i: int, j: int) -> "Trail":
        """Subtrail between vertex positions i and j (inclusive)."""
        return Trail(self.vertices[i:j + 1], self.edges[i:j])

    def internal_positions(self, v: int) -> list[int]:
        return [i for i in range(1, len(self.vertices) - 1) if self.vertices[i] == v]

    def is_trail(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def is_valid(self, g: CubicMultigraph) -> bool:
        if not self.is_trail():
            return False
        for i, e in enumerate(self.edges):
            a, b = g.edges[e]
            if {a, b} != {self.vertices[i], self.vertices[i + 1]}:
                return False
        return True

    def darts(self, g: CubicMultigraph) -> list[Dart]:
        """Dart leaving ``v_{i-1}`` for every step; a loop leaves by side 0."""
        return [g.dart_of(e, self.vertices[i]) for i, e in enumerate(self.edges)]

    def end_dart(self, g: CubicMultigraph, which: int) -> Dart:
        """Dart at the start (``which == 0``) or the end (``which == 1``)."""
        if which == 0:
            return g.dart_of(self.edges[0], self.vertices[0])
        return g.dart_of(self.edges[-1], self.vertices[-1])

    def to_text(self) -> str:
        parts = [str(self.vertices[0])]
        for e, v in zip(self.edges, self.vertices[1:]):
            parts.append(f"({e}) {v}")
        return " ".join(parts)

    @classmethod
    def from_text(cls, line: str) -> "Trail":
        tok = line.split()
        if not tok or len(tok) % 2 == 0:
            raise DocumentError(f"bad trail line: {line!r}")
        try:
            verts = [int(t) for t in tok[0::2]]
            edges = []
            for t in tok[1::2]:
                if not (t.startswith("(") and t.endswith(")")):
                    raise ValueError
                edges.append(int(t[1:-1]))
        except ValueError:
            raise DocumentError(f"bad trail line: {line!r}") from None
        return cls(tuple(verts), tuple(edges))


@dataclass(frozen=True)
class TrailPartition:
    """A set of trails covering every edge once, stored in canonical order."""

    trails: tuple[Trail, ...]

    def __post_init__(self):
        object.__setattr__(self, "trails", tuple(sorted((t.canonical() for t in self.trails),
                                                        key=lambda t: (t.vertices, t.edges))))

    def __len__(self):
        return len(self.trails)

    def __iter__(self):
        return iter(self.trails)

    @property
    def lengths(self) -> list[int]:
        return sorted(t.length for t in self.trails)

    @property
    def is_odd(self) -> bool:
        return all(t.is_odd for t in self.trails)

    @property
    def max_length(self) -> int:
        return max((t.length for t in self.trails), default=0)

    def trail_of_edge(self) -> dict[int, int]:
        return {e: i for i, t in enumerate(self.trails) for e in t.edges}

    def to_text(self) -> str:
        return "".join(t.to_text() + "\n" for t in self.trails)

    @classmethod
    def from_text(cls, text: str) -> "TrailPartition":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        return cls(tuple(Trail.from_text(ln) for ln in lines if ln))


def check_cover(g: CubicMultigraph, partition: TrailPartition) -> None:
    """Raise unless every trail is valid in ``g`` and covers each edge once."""
    seen = Counter()
    for t in partition.trails:
        if t.length == 0:
            raise PartitionError("a partition may not contain a length-0 trail")
        if not t.is_valid(g):
            raise PartitionError(f"not a trail of the graph: {t.to_text()}")
        seen.update(t.edges)
    missing = [e for e in range(g.m) if seen[e] != 1]
    if missing or len(seen) != g.m:
        raise PartitionError(f"edges not covered exactly once: {missing[:10]}")


@dataclass(frozen=True)
class VertexStatus:
    role: str                      # "normal" or "eccentric"
    end_count: int
    marked_dart: Dart | None
    internal_trail: int | None     # index into partition.trails
    end_vertices: tuple[int, ...]  # E_T(v)

    @property
    def is_normal(self) -> bool:
        return self.role == "normal"


def _ends(partition: TrailPartition):
    """(vertex, trail index, which end) for both ends of every trail."""
    for i, t in enumerate(partition.trails):
        yield t.start, i, 0
        yield t.end, i, 1


def status(g: CubicMultigraph, partition: TrailPartition) -> dict[int, VertexStatus]:
    check_cover(g, partition)
    ends = {v: [] for v in range(g.n)}
    for v, i, which in _ends(partition):
        ends[v].append((i, which))
    internal = {v: [] for v in range(g.n)}
    for i, t in enumerate(partition.trails):
        for pos in range(1, t.length):
            internal[t.vertices[pos]].append(i)
    out = {}
    for v in range(g.n):
        if len(ends[v]) == 1:
            i, which = ends[v][0]
            t = partition.trails[i]
            (k,) = internal[v]
            host = partition.trails[k]
            out[v] = VertexStatus("normal", 1, t.end_dart(g, which), k, tuple(sorted({host.start, host.end})))
        else:
            out[v] = VertexStatus("eccentric", len(ends[v]), None, None, ())
    return out


def is_normal(g: CubicMultigraph, partition: TrailPartition) -> bool:
    check_cover(g, partition)
    counts = Counter(v for v, _, _ in _ends(partition))
    return all(counts[v] == 1 for v in range(g.n))


def eccentric_vertices(g: CubicMultigraph, partition: TrailPartition) -> list[int]:
    counts = Counter(v for v, _, _ in _ends(partition))
    return [v for v in range(g.n) if counts[v] != 1]


# -- greedy construction and normalization ----------------------------------

def random_trail_partition(g: CubicMultigraph, rng: random.Random | int | None = None) -> TrailPartition:
    """Greedy random partition into trails: walk along unused edges until stuck."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    used = [False] * g.m
    trails = []
    order = list(range(g.n))
    rng.shuffle(order)
    for s in order:
        while True:
            free = [e for e in g.incident_edges(s) if not used[e]]
            if not free:
                break
            verts, edges = [s], []
            v = s
            while free:
                e = rng.choice(free)
                used[e] = True
                edges.append(e)
                v = g.other_end(e, v)
                verts.append(v)
                free = [f for f in g.incident_edges(v) if not used[f]]
            trails.append(Trail(tuple(verts), tuple(edges)))
    return TrailPartition(tuple(trails))


def singleton_partition(g: CubicMultigraph) -> TrailPartition:
    """Every edge its own trail."""
    return TrailPartition(tuple(Trail.walk(g, g.edges[e][0], [e]) for e in range(g.m)))


def greedy_normalize_counted(g: CubicMultigraph, partition: TrailPartition) -> tuple[TrailPartition, int]:
    """Concatenate two trails at each eccentric vertex; returns (result, steps).

    A concatenation at ``v`` leaves the end counts of all other vertices
    untouched, so one pass over the vertices suffices.
    """
    check_cover(g, partition)
    trails: dict[int, Trail] = dict(enumerate(partition.trails))
    ends: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    for i, t in trails.items():
        ends[t.start].append((i, 0))
        ends[t.end].append((i, 1))
    next_id = len(trails)
    steps = 0
    for v in range(g.n):
        if len(ends[v]) == 1:
            continue
        # three ends at v; they belong to at least two distinct trails
        (i1, w1), rest = ends[v][0], ends[v][1:]
        i2, w2 = next((i, w) for i, w in rest if i != i1)
        t1 = trails.pop(i1)
        t2 = trails.pop(i2)
        t1 = t1 if w1 == 1 else t1.reversed()
        t2 = t2 if w2 == 0 else t2.reversed()
        joined = t1.then(t2)
        # unregister every end of t1/t2 and register the ends of the join
        for u in {t1.start, t1.end, t2.start, t2.end}:
            ends[u] = [(i, w) for i, w in ends[u] if i not in (i1, i2)]
        trails[next_id] = joined
        ends[joined.start].append((next_id, 0))
        ends[joined.end].append((next_id, 1))
        next_id += 1
        steps += 1
    return TrailPartition(tuple(trails.values())), steps


def greedy_normalize(g: CubicMultigraph, partition: TrailPartition) -> TrailPartition:
    return greedy_normalize_counted(g, partition)[0]


def greedy_normal_partition(g: CubicMultigraph) -> TrailPartition:
    return greedy_normalize(g, singleton_partition(g))


# -- statistics --------------------------------------------------------------

@dataclass(frozen=True)
class PartitionStats:
    counts: dict[int, int]   # trail length -> number of trails
    size: int
    mean: Fraction
    length: int              # longest trail
    is_odd: bool

    @property
    def balance(self) -> int:
        """sum over lengths i of (3 - i) * n_i; zero for normal partitions."""
        return sum((3 - i) * c for i, c in self.counts.items())

    def as_dict(self) -> dict:
        return {
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "size": self.size,
            "mean": str(self.mean),
            "length": self.length,
            "odd": self.is_odd,
            "balance": self.balance,
        }


def stats(partition: TrailPartition) -> PartitionStats:
    counts = Counter(t.length for t in partition.trails)
    total = sum(counts.values())
    mean = Fraction(sum(i * c for i, c in counts.items()), total) if total else Fraction(0)
    return PartitionStats(dict(sorted(counts.items())), total, mean, partition.max_length, partition.is_odd)


def internal_edges(trail: Trail) -> tuple[int, ...]:
    return trail.edges[1:-1]


def odd_edges(trail: Trail) -> tuple[int, ...]:
    """Edges whose removal leaves two odd subtrails: positions 2, 4, ... (1-based)."""
    k = len(trail.edges)
    return tuple(trail.edges[i] for i in range(1, k, 2) if (k - i - 1) % 2 == 1)


def trails_from_edges(g: CubicMultigraph, specs: Iterable[tuple[int, Sequence[int]]]) -> TrailPartition:
    """Build a partition from ``(start vertex, edge ids)`` pairs."""
    return TrailPartition(tuple(Trail.walk(g, s, es) for s, es in specs))
