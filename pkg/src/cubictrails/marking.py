"""Markings: the edge each vertex marks in a normal partition.

A normal partition is determined by its marking, and a marking comes from a
normal partition exactly when the edges marked by neither endpoint form a
forest (a loop and a parallel pair count as cycles). This module implements
both directions, an exhaustive enumerator, and compatibility testing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import DocumentError, GuardExceeded, InvalidMarking, PartitionError
from .graph import CubicMultigraph, Dart
from .trails import (Trail, TrailPartition, check_cover, greedy_normalize,
                     random_trail_partition)

DEFAULT_GUARD_N = 14


@dataclass(frozen=True)
class Marking:
    """``marks[v]`` is the id of the edge marked at ``v``."""

    marks: tuple[int, ...]

    def __len__(self):
        return len(self.marks)

    def __getitem__(self, v: int) -> int:
        return self.marks[v]

    def dart(self, g: CubicMultigraph, v: int) -> Dart:
        return g.dart_of(self.marks[v], v)

    def check(self, g: CubicMultigraph) -> None:
        if len(self.marks) != g.n:
            raise PartitionError(f"marking has {len(self.marks)} entries for {g.n} vertices")
        for v, e in enumerate(self.marks):
            if not 0 <= e < g.m or v not in g.edges[e]:
                raise PartitionError(f"vertex {v} marks edge {e}, which is not incident to it")

    def to_text(self, g: CubicMultigraph) -> str:
        return "".join(f"{v}: {e} {self.dart(g, v).side}\n" for v, e in enumerate(self.marks))

    @classmethod
    def from_text(cls, g: CubicMultigraph, text: str) -> "Marking":
        marks: dict[int, int] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(":")
            try:
                v = int(head)
                e, side = (int(t) for t in rest.split())
            except ValueError:
                raise DocumentError(f"bad marking line: {raw!r}") from None
            if not (0 <= v < g.n and 0 <= e < g.m and side in (0, 1)) or g.edges[e][side] != v:
                raise DocumentError(f"dart ({e}, {side}) is not at vertex {v}")
            if v in marks:
                raise DocumentError(f"vertex {v} marked twice")
            marks[v] = e
        if sorted(marks) != list(range(g.n)):
            raise DocumentError("a marking document needs one line per vertex")
        return cls(tuple(marks[v] for v in range(g.n)))


def to_marking(g: CubicMultigraph, partition: TrailPartition) -> Marking:
    """The marked edge of every vertex; raises PartitionError unless normal."""
    check_cover(g, partition)
    marks: list[int | None] = [None] * g.n
    for t in partition.trails:
        for v, e in ((t.start, t.edges[0]), (t.end, t.edges[-1])):
            if marks[v] is not None:
                raise PartitionError(f"vertex {v} is eccentric; the partition is not normal")
            marks[v] = e
    if None in marks:
        missing = marks.index(None)
        raise PartitionError(f"vertex {missing} ends no trail; the partition is not normal")
    return Marking(tuple(marks))


# -- validity ------------------------------------------------------------------

def unmarked_edges(g: CubicMultigraph, marking: Marking) -> list[int]:
    return [e for e, (a, b) in enumerate(g.edges) if marking[a] != e and marking[b] != e]


def find_unmarked_cycle(g: CubicMultigraph, marking: Marking) -> list[int] | None:
    """Edge ids of a cycle among unmarked edges, or None when they form a forest."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in unmarked_edges(g, marking):
        a, b = g.edges[e]
        if a == b:
            return [e]
        ra, rb = find(a), find(b)
        if ra == rb:
            return _tree_path(adj, b, a) + [e]
        parent[ra] = rb
        adj[a].append((b, e))
        adj[b].append((a, e))
    return None


def _tree_path(adj, s, t) -> list[int]:
    """Edge ids of the unique s-t path in a forest given by ``adj``."""
    prev = {s: None}
    stack = [s]
    while stack:
        v = stack.pop()
        if v == t:
            break
        for w, e in adj[v]:
            if w not in prev:
                prev[w] = (v, e)
                stack.append(w)
    path = []
    v = t
    while prev[v] is not None:
        v, e = prev[v]
        path.append(e)
    return path[::-1]


def is_valid_marking(g: CubicMultigraph, marking: Marking) -> bool:
    return find_unmarked_cycle(g, marking) is None


# -- reconstruction ------------------------------------------------------------

def from_marking(g: CubicMultigraph, marking: Marking) -> TrailPartition:
    """The unique normal partition with the given marking.

    Unmarked edges form vertex-disjoint paths (every vertex spends at least one
    of its darts on its mark). Each path is extended at both ends through the
    remaining darts there; an isolated vertex of the unmarked forest becomes
    the middle of a length-2 trail; edges marked from both sides stay alone.
    """
    marking.check(g)
    cycle = find_unmarked_cycle(g, marking)
    if cycle is not None:
        raise InvalidMarking(f"unmarked edges contain the cycle {cycle}", cycle)
    unmarked = set(unmarked_edges(g, marking))
    u_adj: list[list[int]] = [[] for _ in range(g.n)]
    for e in unmarked:
        a, b = g.edges[e]
        u_adj[a].append(e)
        u_adj[b].append(e)

    def extension_darts(w):
        mark = marking.dart(g, w)
        return [d for d in g.darts_at(w) if d.edge not in unmarked and d != mark]

    def stub(w, d):
        """Length-1 trail leaving w by dart d."""
        return Trail((w, g.edges[d.edge][1 - d.side]), (d.edge,))

    trails = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s] or len(u_adj[s]) == 2:
            continue
        seen[s] = True
        if not u_adj[s]:
            d1, d2 = extension_darts(s)
            trails.append(stub(s, d1).reversed().then(stub(s, d2)))
            continue
        # walk the unmarked path from its end s to its other end
        verts, edges = [s], []
        v, prev_e = s, None
        while True:
            nxt = [e for e in u_adj[v] if e != prev_e]
            if not nxt:
                break
            prev_e = nxt[0]
            edges.append(prev_e)
            v = g.other_end(prev_e, v)
            verts.append(v)
            seen[v] = True
        core = Trail(tuple(verts), tuple(edges))
        (head,) = extension_darts(s)
        (tail,) = extension_darts(v)
        trails.append(stub(s, head).reversed().then(core).then(stub(v, tail)))
    for e, (a, b) in enumerate(g.edges):
        if a != b and marking[a] == e and marking[b] == e:
            trails.append(Trail((a, b), (e,)))
    return TrailPartition(tuple(trails))


# -- enumeration -------------------------------------------------------------

class _RollbackUnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[int | None] = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append(rb)
        return True

    def rollback(self, mark: int):
        while len(self.history) > mark:
            rb = self.history.pop()
            ra = self.parent[rb]
            self.size[ra] -= self.size[rb]
            self.parent[rb] = rb


def enumerate_markings(g: CubicMultigraph, guard_n: int | None = DEFAULT_GUARD_N) -> Iterator[Marking]:
    """All valid markings in lexicographic order of ``marks``."""
    for mk, _ in enumerate_markings_with_lengths(g, guard_n):
        yield mk


def enumerate_markings_with_lengths(g: CubicMultigraph, guard_n: int | None = DEFAULT_GUARD_N
                                    ) -> Iterator[tuple[Marking, tuple[int, ...]]]:
    """Valid markings with the sorted trail lengths of their partitions.

    Vertices are assigned in id order. Once both ends of an edge are
    assigned, an unmarked edge is merged into a rollback union-find and a
    closed cycle prunes the branch. At a leaf each unmarked component with
    ``s`` vertices is a path carrying a trail of length ``s + 1``, and each
    edge marked from both sides is a trail of length 1.
    """
    if guard_n is not None and g.n > guard_n:
        raise GuardExceeded(f"marking enumeration over 3^{g.n} candidates exceeds guard n <= {guard_n}")
    choices = [sorted(g.incident_edges(v)) for v in range(g.n)]
    # edges that become decided right after vertex v is assigned
    closing: list[list[int]] = [[] for _ in range(g.n)]
    for e, (a, b) in enumerate(g.edges):
        closing[max(a, b)].append(e)
    marks = [-1] * g.n
    uf = _RollbackUnionFind(g.n)

    def lengths():
        out = [uf.size[x] + 1 for x in range(g.n) if uf.parent[x] == x]
        out += [1 for e, (a, b) in enumerate(g.edges) if a != b and marks[a] == e and marks[b] == e]
        return tuple(sorted(out))

    def rec(v):
        if v == g.n:
            yield Marking(tuple(marks)), lengths()
            return
        for e in choices[v]:
            marks[v] = e
            checkpoint = len(uf.history)
            ok = True
            for f in closing[v]:
                a, b = g.edges[f]
                if marks[a] != f and marks[b] != f and not uf.union(a, b):
                    ok = False
                    break
            if ok:
                yield from rec(v + 1)
            uf.rollback(checkpoint)
        marks[v] = -1

    yield from rec(0)


LengthFilter = Callable[[Sequence[int]], bool]


def make_filter(odd: bool = False, max_length: int | None = None) -> LengthFilter | None:
    """Predicate on the trail lengths of a partition, or None for no filter."""
    if not odd and max_length is None:
        return None

    def keep(lengths: Sequence[int]) -> bool:
        if odd and any(l % 2 == 0 for l in lengths):
            return False
        return max_length is None or max(lengths, default=0) <= max_length

    return keep


def enumerate_normal_partitions(g: CubicMultigraph, *, odd: bool = False, max_length: int | None = None,
                                guard_n: int | None = DEFAULT_GUARD_N) -> Iterator[TrailPartition]:
    for _, p in enumerate_marked_partitions(g, make_filter(odd, max_length), guard_n):
        yield p


def enumerate_marked_partitions(g: CubicMultigraph, keep: LengthFilter | None = None,
                                guard_n: int | None = DEFAULT_GUARD_N) -> Iterator[tuple[Marking, TrailPartition]]:
    for mk, lengths in enumerate_markings_with_lengths(g, guard_n):
        if keep is None or keep(lengths):
            yield mk, from_marking(g, mk)


def count_normal_partitions(g: CubicMultigraph, keep: LengthFilter | None = None,
                            guard_n: int | None = DEFAULT_GUARD_N) -> int:
    return sum(1 for _, lengths in enumerate_markings_with_lengths(g, guard_n)
               if keep is None or keep(lengths))


def random_normal_partition(g: CubicMultigraph, rng: random.Random | int | None = None) -> TrailPartition:
    """Greedy normalization of a random trail partition."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    return greedy_normalize(g, random_trail_partition(g, rng))


# -- compatibility -------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """A yes/no answer with the first offending vertex (or edge) as witness."""

    ok: bool
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def markings_compatible(a: Marking, b: Marking) -> Verdict:
    for v, (x, y) in enumerate(zip(a.marks, b.marks)):
        if x == y:
            return Verdict(False, v, f"both mark edge {x} at vertex {v}")
    return Verdict(True)


def are_compatible(g: CubicMultigraph, t1: TrailPartition, t2: TrailPartition) -> Verdict:
    return markings_compatible(to_marking(g, t1), to_marking(g, t2))
