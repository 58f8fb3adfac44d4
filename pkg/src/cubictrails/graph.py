"""Cubic multigraphs with stable edge ids, plus the small general graphs used
for path double covers.

Loops and parallel edges are first-class: every edge end is a :class:`Dart`
``(edge, side)`` and side ``s`` of edge ``e`` sits at ``edges[e][s]``.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import networkx as nx

from .errors import GraphFormatError


class Dart(NamedTuple):
    edge: int
    side: int


class CubicMultigraph:
    """An immutable cubic multigraph on vertices ``0..n-1``.

    ``edges[e]`` is the endpoint pair of edge ``e``; a loop repeats its vertex.
    """

    __slots__ = ("n", "edges", "_darts", "_incident")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        edges = tuple((int(a), int(b)) for a, b in edges)
        if n < 0 or n % 2:
            raise GraphFormatError(f"a cubic graph needs an even vertex count, got {n}")
        if len(edges) != 3 * n // 2:
            raise GraphFormatError(f"expected {3 * n // 2} edges for n={n}, got {len(edges)}")
        darts: list[list[Dart]] = [[] for _ in range(n)]
        for e, (a, b) in enumerate(edges):
            for side, v in enumerate((a, b)):
                if not 0 <= v < n:
                    raise GraphFormatError(f"edge {e}: vertex {v} out of range 0..{n - 1}")
                darts[v].append(Dart(e, side))
        for v, ds in enumerate(darts):
            if len(ds) != 3:
                raise GraphFormatError(f"vertex {v} has degree {len(ds)}, expected 3")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_darts", tuple(tuple(ds) for ds in darts))
        incident = tuple(tuple(dict.fromkeys(d.edge for d in ds)) for ds in darts)
        object.__setattr__(self, "_incident", incident)

    def __setattr__(self, name, value):
        raise AttributeError("CubicMultigraph is immutable")

    def __eq__(self, other):
        return isinstance(other, CubicMultigraph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"CubicMultigraph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def darts_at(self, v: int) -> tuple[Dart, ...]:
        return self._darts[v]

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Distinct edges at ``v``; a loop is listed once."""
        return self._incident[v]

    def endpoint(self, dart: Dart) -> int:
        return self.edges[dart.edge][dart.side]

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a == b

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"edge {e} is not incident to vertex {v}")

    def dart_of(self, e: int, v: int) -> Dart:
        """The dart of ``e`` at ``v``; side 0 for a loop."""
        a, b = self.edges[e]
        if a == v:
            return Dart(e, 0)
        if b == v:
            return Dart(e, 1)
        raise ValueError(f"edge {e} is not incident to vertex {v}")

    def neighbors(self, v: int) -> list[int]:
        """Neighbours of ``v`` with multiplicity, loops excluded."""
        return [self.other_end(e, v) for e in self.incident_edges(v) if not self.is_loop(e)]

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self.incident_edges(u) if self.other_end(e, u) == v]

    def to_text(self) -> str:
        return format_edge_list(self.n, self.edges)

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(range(self.n))
        for e, (a, b) in enumerate(self.edges):
            h.add_edge(a, b, key=e)
        return h


@dataclass(frozen=True)
class GeneralGraph:
    """A simple undirected graph (no loops, no parallel edges)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        norm = []
        seen = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphFormatError(f"edge {a}-{b} out of range for n={self.n}")
            if a == b:
                raise GraphFormatError(f"loop at {a} in a simple graph")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise GraphFormatError(f"parallel edge {key} in a simple graph")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))
        adj = [set() for _ in range(self.n)]
        for a, b in norm:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def to_text(self) -> str:
        return format_edge_list(self.n, self.edges)


def edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


# -- edge-list documents -----------------------------------------------------

def format_edge_list(n: int, edges) -> str:
    lines = [f"{n} {len(edges)}"]
    lines += [f"{a} {b}" for a, b in edges]
    return "\n".join(lines) + "\n"


def _edge_list_rows(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    return rows


def _read_pairs(text: str) -> tuple[int, list[tuple[int, int]]]:
    rows = _edge_list_rows(text)
    if not rows:
        raise GraphFormatError("empty graph document")
    lineno, head = rows[0]
    if len(head) != 2:
        raise GraphFormatError(f"line {lineno}: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: header must be two integers") from None
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(rows) - 1}")
    pairs = []
    for lineno, tok in rows[1:]:
        if len(tok) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v'")
        try:
            a, b = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: vertex ids must be integers") from None
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        pairs.append((a, b))
    return n, pairs


def parse_edge_list(text: str) -> CubicMultigraph:
    """Parse the multigraph edge-list format; edge ids follow input order."""
    n, pairs = _read_pairs(text)
    return CubicMultigraph(n, pairs)


def parse_general_graph(text: str) -> GeneralGraph:
    n, pairs = _read_pairs(text)
    return GeneralGraph(n, tuple(pairs))


def parse_graph6(text: str) -> CubicMultigraph:
    """Read a simple cubic graph from graph6 (edges sorted lexicographically)."""
    data = text.strip().splitlines()[0].strip().encode()
    try:
        h = nx.from_graph6_bytes(data)
    except Exception as exc:  # networkx raises several types for bad input
        raise GraphFormatError(f"bad graph6 string: {exc}") from None
    return CubicMultigraph(h.number_of_nodes(), sorted(edge_key(a, b) for a, b in h.edges()))


def to_graph6(g: CubicMultigraph) -> str:
    report = structure_report(g)
    if report.has_loop or report.has_parallel:
        raise GraphFormatError("graph6 only encodes simple graphs")
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


# -- structure ---------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    has_loop: bool
    has_parallel: bool
    bridges: tuple[int, ...]
    is_bipartite: bool
    is_connected: bool
    is_2_edge_connected: bool
    # (W, B) colour classes when bipartite
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def as_dict(self) -> dict:
        d = {
            "has_loop": self.has_loop,
            "has_parallel": self.has_parallel,
            "bridges": list(self.bridges),
            "is_bipartite": self.is_bipartite,
            "is_connected": self.is_connected,
            "is_2_edge_connected": self.is_2_edge_connected,
        }
        if self.bipartition is not None:
            d["W"], d["B"] = map(list, self.bipartition)
        return d


def _adjacency(n, edges) -> list[list[tuple[int, int]]]:
    adj = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        adj[a].append((b, e))
        if a != b:
            adj[b].append((a, e))
    return adj


def find_bridges(n: int, edges) -> list[int]:
    """Bridge edge ids by an iterative low-link pass.

    The DFS skips only the tree edge it arrived by (by id), so a parallel pair
    closes a cycle and is never reported.
    """
    adj = _adjacency(n, edges)
    disc = [-1] * n
    low = [0] * n
    bridges = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for w, e in it:
                if e == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(adj[w])))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.append(via)
    return sorted(bridges)


def connected_components(n: int, edges) -> list[list[int]]:
    adj = _adjacency(n, edges)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w, _ in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def two_coloring(n: int, edges) -> list[int] | None:
    """Side (0/1) per vertex of a proper 2-colouring, or None if an odd cycle exists."""
    adj = _adjacency(n, edges)
    side = [-1] * n
    for s in range(n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def structure_report(g: CubicMultigraph) -> StructureReport:
    has_loop = any(a == b for a, b in g.edges)
    keys = [edge_key(a, b) for a, b in g.edges if a != b]
    has_parallel = len(keys) != len(set(keys))
    bridges = tuple(find_bridges(g.n, g.edges))
    connected = len(connected_components(g.n, g.edges)) <= 1
    sides = two_coloring(g.n, g.edges)
    bipartition = None
    if sides is not None:
        w = tuple(v for v in range(g.n) if sides[v] == 0)
        b = tuple(v for v in range(g.n) if sides[v] == 1)
        bipartition = (w, b)
    return StructureReport(
        has_loop=has_loop,
        has_parallel=has_parallel,
        bridges=bridges,
        is_bipartite=sides is not None,
        is_connected=connected,
        is_2_edge_connected=connected and not bridges,
        bipartition=bipartition,
    )


def girth(g: CubicMultigraph) -> float:
    """Length of a shortest cycle (loops count 1, parallel pairs 2)."""
    best = float("inf")
    for e, (a, b) in enumerate(g.edges):
        if a == b:
            return 1
    keys = [edge_key(a, b) for a, b in g.edges]
    if len(keys) != len(set(keys)):
        return 2
    adj = _adjacency(g.n, g.edges)
    for s in range(g.n):
        dist = {s: 0}
        parent_edge = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, e in adj[v]:
                if e == parent_edge[v]:
                    continue
                if w in dist:
                    best = min(best, dist[v] + dist[w] + 1)
                else:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = e
                    queue.append(w)
    return best
