"""Classical backtracking subroutines on cubic multigraphs: perfect matchings,
proper 3-edge-colourings, hamiltonian paths and cycles, 2-factor orientations
and strong matchings meeting a 2-factor."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable

from .errors import ConstructionError, StrongMatchingNotFound
from .graph import CubicMultigraph
from .trails import Trail

COLOR_NAMES = ("alpha", "beta", "gamma")

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


# -- perfect matchings -------------------------------------------------------

def perfect_matchings(g: CubicMultigraph, limit: int | None = None) -> list[frozenset[int]]:
    """All perfect matchings (as edge-id sets), or the first ``limit`` of them.

    Backtracks on the lowest uncovered vertex; loops never enter a matching.
    """
    covered = [False] * g.n
    chosen: list[int] = []
    out: list[frozenset[int]] = []

    def rec(v):
        if limit is not None and len(out) >= limit:
            return
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            out.append(frozenset(chosen))
            return
        covered[v] = True
        for e in g.incident_edges(v):
            w = g.other_end(e, v)
            if w == v or covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            rec(v + 1)
            chosen.pop()
            covered[w] = False
        covered[v] = False

    rec(0)
    return out


def is_perfect_matching(g: CubicMultigraph, edges: Iterable[int]) -> bool:
    hit = [0] * g.n
    for e in edges:
        a, b = g.edges[e]
        if a == b:
            return False
        hit[a] += 1
        hit[b] += 1
    return all(h == 1 for h in hit)


# -- 3-edge-colourings -------------------------------------------------------

@dataclass(frozen=True)
class EdgeColoring:
    """Colour 0, 1, 2 (alpha, beta, gamma) per edge id."""

    colors: tuple[int, ...]

    def is_proper(self, g: CubicMultigraph) -> bool:
        if len(self.colors) != g.m or any(c not in (0, 1, 2) for c in self.colors):
            return False
        for v in range(g.n):
            ds = g.darts_at(v)
            if len({self.colors[d.edge] for d in ds}) != 3 or len({d.edge for d in ds}) != 3:
                return False
        return True

    def color_class(self, c: int) -> frozenset[int]:
        return frozenset(e for e, x in enumerate(self.colors) if x == c)

    def edge_of_color(self, g: CubicMultigraph, v: int, c: int) -> int:
        for e in g.incident_edges(v):
            if self.colors[e] == c:
                return e
        raise ValueError(f"vertex {v} has no edge of colour {c}")

    def to_text(self) -> str:
        return "".join(f"{e} {COLOR_NAMES[c]}\n" for e, c in enumerate(self.colors))


def proper_3_edge_coloring(g: CubicMultigraph) -> EdgeColoring | None:
    """A proper 3-edge-colouring, or None once the search is exhausted.

    Edges are coloured in DFS discovery order; the first vertex of each
    component gets colours 0, 1, 2 on its edges, which loses no generality.
    """
    if any(a == b for a, b in g.edges):
        return None
    order: list[int] = []
    seen_e = [False] * g.m
    seen_v = [False] * g.n
    roots = []
    for r in range(g.n):
        if seen_v[r]:
            continue
        roots.append(r)
        stack = [r]
        seen_v[r] = True
        while stack:
            v = stack.pop()
            for e in g.incident_edges(v):
                if not seen_e[e]:
                    seen_e[e] = True
                    order.append(e)
                w = g.other_end(e, v)
                if not seen_v[w]:
                    seen_v[w] = True
                    stack.append(w)
    colors = [-1] * g.m
    used = [0] * g.n  # bitmask of colours present at each vertex
    for r in roots:
        for c, e in enumerate(g.incident_edges(r)):
            a, b = g.edges[e]
            if used[a] & (1 << c) or used[b] & (1 << c):
                return None
            colors[e] = c
            used[a] |= 1 << c
            used[b] |= 1 << c
    rest = [e for e in order if colors[e] == -1]

    def rec(i):
        if i == len(rest):
            return True
        e = rest[i]
        a, b = g.edges[e]
        free = ~(used[a] | used[b]) & 7
        for c in range(3):
            if free & (1 << c):
                colors[e] = c
                used[a] |= 1 << c
                used[b] |= 1 << c
                if rec(i + 1):
                    return True
                used[a] &= ~(1 << c)
                used[b] &= ~(1 << c)
                colors[e] = -1
        return False

    return EdgeColoring(tuple(colors)) if rec(0) else None


# -- hamiltonicity -------------------------------------------------------------

def hamiltonian_path(g: CubicMultigraph, start: int | None = None) -> Trail | None:
    """A hamiltonian path as a trail (explicit edge per step), or None."""
    if g.n == 0:
        return None
    starts = range(g.n) if start is None else [start]
    for s in starts:
        found = _ham_search(g, s, closed=False)
        if found is not None:
            return found
    return None


def hamiltonian_cycle(g: CubicMultigraph) -> Trail | None:
    """A hamiltonian cycle as a closed trail of length n starting at vertex 0."""
    if g.n == 0:
        return None
    return _ham_search(g, 0, closed=True)


def _ham_search(g: CubicMultigraph, s: int, closed: bool) -> Trail | None:
    visited = [False] * g.n
    verts, edges = [s], []
    visited[s] = True

    def rec():
        v = verts[-1]
        if len(verts) == g.n:
            if not closed:
                return True
            for e in g.incident_edges(v):
                if g.other_end(e, v) == s and (not edges or e != edges[0]) and not g.is_loop(e):
                    edges.append(e)
                    verts.append(s)
                    return True
            return False
        tried = set()
        for e in g.incident_edges(v):
            w = g.other_end(e, v)
            if visited[w] or w in tried:
                continue
            tried.add(w)
            visited[w] = True
            verts.append(w)
            edges.append(e)
            if rec():
                return True
            edges.pop()
            verts.pop()
            visited[w] = False
        return False

    if rec():
        return Trail(tuple(verts), tuple(edges))
    return None


# -- 2-factors and orientations ----------------------------------------------

def two_factor_cycles(g: CubicMultigraph, factor_edges: Iterable[int]) -> list[Trail]:
    """Cycles of a 2-factor as closed trails, each starting at its lowest
    vertex and leaving along its lowest-id factor edge there."""
    factor = set(factor_edges)
    deg = [0] * g.n
    for e in factor:
        a, b = g.edges[e]
        deg[a] += 1
        deg[b] += 1
    if any(d != 2 for d in deg):
        raise ConstructionError("edge set is not a 2-factor")
    seen = [False] * g.n
    cycles = []
    for s in range(g.n):
        if seen[s]:
            continue
        first = min(e for e in g.incident_edges(s) if e in factor)
        verts, edges = [s], [first]
        seen[s] = True
        v = g.other_end(first, s)
        while v != s:
            seen[v] = True
            verts.append(v)
            nxt = next(e for e in g.incident_edges(v) if e in factor and e != edges[-1])
            edges.append(nxt)
            v = g.other_end(nxt, v)
        verts.append(s)
        cycles.append(Trail(tuple(verts), tuple(edges)))
    return cycles


@dataclass(frozen=True)
class Orientation:
    """Outgoing and incoming factor edge per vertex along oriented cycles."""

    out_edge: tuple[int, ...]
    in_edge: tuple[int, ...]
    succ: tuple[int, ...]
    pred: tuple[int, ...]

    @classmethod
    def from_cycles(cls, g: CubicMultigraph, cycles: Iterable[Trail]) -> "Orientation":
        out_e = [-1] * g.n
        in_e = [-1] * g.n
        succ = [-1] * g.n
        pred = [-1] * g.n
        for c in cycles:
            for i, e in enumerate(c.edges):
                a, b = c.vertices[i], c.vertices[i + 1]
                out_e[a], succ[a] = e, b
                in_e[b], pred[b] = e, a
        if -1 in out_e:
            raise ConstructionError("cycles do not cover every vertex")
        return cls(tuple(out_e), tuple(in_e), tuple(succ), tuple(pred))

    def reversed(self) -> "Orientation":
        return Orientation(self.in_edge, self.out_edge, self.pred, self.succ)


def default_orientation(g: CubicMultigraph, matching: Iterable[int]) -> Orientation:
    """Orientation of the 2-factor ``G - M``: lowest vertex first, lowest edge out."""
    m = set(matching)
    return Orientation.from_cycles(g, two_factor_cycles(g, [e for e in range(g.m) if e not in m]))


def orientation_with(g: CubicMultigraph, cycles: list[Trail], forced: dict[int, int]) -> Orientation:
    """Orient each cycle so that ``succ(u) == v`` for every ``u: v`` in ``forced``."""
    oriented = []
    for c in cycles:
        verts = c.vertices[:-1]
        fwd = Trail(c.vertices, c.edges)
        for u, v in forced.items():
            if u in verts:
                i = verts.index(u)
                if c.vertices[i + 1] != v:
                    fwd = c.reversed()
                break
        oriented.append(fwd)
    o = Orientation.from_cycles(g, oriented)
    for u, v in forced.items():
        if o.succ[u] != v:
            raise ConstructionError(f"cannot orient so that {v} follows {u}")
    return o


# -- strong matchings ----------------------------------------------------------

def is_strong_matching(g: CubicMultigraph, edges: Iterable[int]) -> bool:
    """No graph edge outside ``edges`` has both ends in V(edges)."""
    edges = set(edges)
    cover = [0] * g.n
    for e in edges:
        a, b = g.edges[e]
        if a == b:
            return False
        cover[a] += 1
        cover[b] += 1
    if any(c > 1 for c in cover):
        return False
    return all(e in edges or not (cover[a] and cover[b]) for e, (a, b) in enumerate(g.edges))


def strong_matching_meeting_2factor(g: CubicMultigraph, coloring: EdgeColoring,
                                    colors: tuple[int, int] = (0, 1)) -> list[int]:
    """One edge per cycle of the 2-factor coloured ``colors``, forming a strong
    matching; aligned with ``two_factor_cycles`` order of that 2-factor.

    Raises StrongMatchingNotFound once the backtracking is exhausted.
    """
    c1, c2 = colors
    factor = [e for e, c in enumerate(coloring.colors) if c in (c1, c2)]
    cycles = two_factor_cycles(g, factor)
    in_f = [False] * g.n
    chosen: list[int] = []

    def compatible(e):
        a, b = g.edges[e]
        if a == b or in_f[a] or in_f[b]:
            return False
        for x in (a, b):
            for f in g.incident_edges(x):
                if f == e:
                    continue
                y = g.other_end(f, x)
                if y in (a, b) or in_f[y]:
                    return False
        return True

    def rec(i):
        if i == len(cycles):
            return True
        for e in cycles[i].edges:
            if compatible(e):
                a, b = g.edges[e]
                in_f[a] = in_f[b] = True
                chosen.append(e)
                if rec(i + 1):
                    return True
                chosen.pop()
                in_f[a] = in_f[b] = False
        return False

    if not rec(0):
        raise StrongMatchingNotFound("no strong matching meets every cycle of the 2-factor exactly once")
    return list(chosen)
