"""Perfect path double covers (PPDC) and compatible ones (CPPDC) on simple graphs.

A PPDC is a collection of paths in which every edge lies on exactly two
paths and every vertex is a path end exactly twice. A path with no edge
counts as two ends at its only vertex. It is compatible when, at every
vertex, the two end edges differ; a path with no edge has no end edge and
so never fits in a CPPDC.

``cppdc_minimal_2ec`` builds a CPPDC of a minimal 2-edge-connected graph by
induction on a degree-2 vertex ``v`` with neighbours ``v1 < v2``:

* **adjacent** (``v1 v2`` is an edge): drop ``v`` and ``v1 v2``, solve both
  sides, then route one end path of each side through ``v1 v2`` to ``v``;
* **suppress** (``G - v`` is not minimal 2-edge-connected): replace the
  path ``v1 v v2`` by the edge ``v1 v2``, solve, and split that edge again;
* **delete** (``G - v`` is minimal 2-edge-connected): solve ``G - v`` and
  extend one end path at ``v1`` and another at ``v2`` to ``v``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
import random
from typing import Iterable, Iterator

import networkx as nx

from .errors import ConstructionError, DocumentError, Falsification
from .graph import GeneralGraph, connected_components, edge_key, find_bridges
from .marking import Verdict

CPPDC_CLAIM = "minimal 2-edge-connected graphs admit a CPPDC"

Path = tuple[int, ...]


@dataclass(frozen=True)
class PathCollection:
    paths: tuple[Path, ...]

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(int(v) for v in p) for p in self.paths))

    def __len__(self):
        return len(self.paths)

    def canonical(self) -> PathCollection:
        """Each path read from its smaller end, paths sorted."""
        return PathCollection(tuple(sorted(_oriented(p) for p in self.paths)))

    def to_text(self) -> str:
        return "".join(" ".join(map(str, p)) + "\n" for p in self.paths)

    @classmethod
    def from_text(cls, text: str) -> PathCollection:
        paths = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                paths.append(tuple(int(tok) for tok in line.split()))
            except ValueError:
                raise DocumentError(f"bad path line: {raw!r}") from None
        return cls(tuple(paths))


def _oriented(p: Path) -> Path:
    return p if p[0] <= p[-1] else p[::-1]


def _path_edges(p: Path) -> list[tuple[int, int]]:
    return [edge_key(a, b) for a, b in zip(p, p[1:])]


def _end_edges(p: Path) -> list[tuple[int, tuple[int, int] | None]]:
    """(vertex, end edge) for both ends; an edgeless path yields (v, None) twice."""
    if len(p) == 1:
        return [(p[0], None), (p[0], None)]
    return [(p[0], edge_key(p[0], p[1])), (p[-1], edge_key(p[-1], p[-2]))]


def verify_ppdc(g: GeneralGraph, p: PathCollection) -> Verdict:
    for i, path in enumerate(p.paths):
        if not path:
            return Verdict(False, i, f"path {i} is empty")
        if any(not 0 <= v < g.n for v in path):
            return Verdict(False, i, f"path {i} leaves the vertex range")
        if len(set(path)) != len(path):
            return Verdict(False, i, f"path {i} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                return Verdict(False, i, f"path {i} uses the non-edge {a}-{b}")
    cover = Counter(e for path in p.paths for e in _path_edges(path))
    for e in g.edges:
        if cover[e] != 2:
            return Verdict(False, e, f"edge {e[0]}-{e[1]} is covered {cover[e]} times")
    ends = Counter(v for path in p.paths for v, _ in _end_edges(path))
    for v in range(g.n):
        if ends[v] != 2:
            return Verdict(False, v, f"vertex {v} is a path end {ends[v]} times")
    return Verdict(True)


def verify_cppdc(g: GeneralGraph, p: PathCollection) -> Verdict:
    base = verify_ppdc(g, p)
    if not base:
        return base
    at: dict[int, list] = {v: [] for v in range(g.n)}
    for path in p.paths:
        for v, e in _end_edges(path):
            at[v].append(e)
    for v, (e, f) in at.items():
        if e is None or e == f:
            return Verdict(False, v, f"the two ends at vertex {v} share end edge {e}")
    return Verdict(True)


# -- minimal 2-edge-connectivity -----------------------------------------------

def _is_2ec(n: int, edges) -> bool:
    if n == 0:
        return False
    return len(connected_components(n, edges)) == 1 and not find_bridges(n, edges)


def is_minimal_2ec(g: GeneralGraph) -> bool:
    edges = list(g.edges)
    if not _is_2ec(g.n, edges):
        return False
    return all(not _is_2ec(g.n, edges[:i] + edges[i + 1:]) for i in range(len(edges)))


# -- the inductive construction ------------------------------------------------------

Adj = dict[int, set[int]]


def _to_general(adj: Adj) -> tuple[GeneralGraph, list[int]]:
    labels = sorted(adj)
    index = {v: i for i, v in enumerate(labels)}
    edges = sorted({edge_key(index[a], index[b]) for a in adj for b in adj[a]})
    return GeneralGraph(len(labels), tuple(edges)), labels


def _check_minimal(adj: Adj, where: str) -> None:
    sub, _ = _to_general(adj)
    if not is_minimal_2ec(sub):
        raise Falsification(CPPDC_CLAIM, f"{where}: the reduced graph is not minimal 2-edge-connected",
                            witness={"vertices": sorted(adj)})


def _without(adj: Adj, vertices=(), edges=()) -> Adj:
    out = {v: set(ns) - set(vertices) for v, ns in adj.items() if v not in vertices}
    for a, b in edges:
        out[a].discard(b)
        out[b].discard(a)
    return out


def _ending_at(paths: list[Path], v: int) -> list[tuple[int, Path]]:
    """(index, path oriented to end at v) for every end at v, in collection order."""
    out = []
    for i, p in enumerate(paths):
        if p[-1] == v:
            out.append((i, p))
        if p[0] == v and len(p) > 1:
            out.append((i, p[::-1]))
    return out


def _solve(adj: Adj) -> list[Path]:
    if len(adj) == 1:
        return [tuple(adj)]
    if len(adj) == 3 and all(len(ns) == 2 for ns in adj.values()):
        a, b, c = sorted(adj)
        return [(a, b, c), (b, c, a), (c, a, b)]
    low = [w for w in sorted(adj) if len(adj[w]) == 2]
    if not low:
        raise Falsification(CPPDC_CLAIM, "no vertex of degree 2", witness={"vertices": sorted(adj)})
    v = low[0]
    v1, v2 = sorted(adj[v])
    if v2 in adj[v1]:
        return _adjacent_case(adj, v, v1, v2)
    rest = _without(adj, vertices=[v])
    sub, _ = _to_general(rest)
    if is_minimal_2ec(sub):
        return _delete_case(rest, v, v1, v2)
    return _suppress_case(adj, v, v1, v2)


def _adjacent_case(adj: Adj, v: int, v1: int, v2: int) -> list[Path]:
    rest = _without(adj, vertices=[v], edges=[(v1, v2)])
    labels = sorted(rest)
    index = {w: i for i, w in enumerate(labels)}
    pairs = [(index[a], index[b]) for a in rest for b in rest[a] if a < b]
    comps = [{labels[i] for i in c} for c in connected_components(len(labels), pairs)]
    if len(comps) != 2 or v1 in comps[0] and v2 in comps[0] or v1 in comps[1] and v2 in comps[1]:
        raise Falsification(CPPDC_CLAIM, "removing the triangle edge does not separate its ends",
                            witness={"vertex": v})
    out: list[Path] = []
    heads = {}
    for vi in (v1, v2):
        comp = next(c for c in comps if vi in c)
        part = {w: rest[w] for w in comp}
        if len(part) > 1:
            _check_minimal(part, "adjacent case component")
        paths = _solve(part)
        i, q = _ending_at(paths, vi)[0]
        heads[vi] = q
        out += paths[:i] + paths[i + 1:]
    out += [heads[v1] + (v2, v), heads[v2] + (v1, v), (v1, v, v2)]
    return out


def _suppress_case(adj: Adj, v: int, v1: int, v2: int) -> list[Path]:
    reduced = _without(adj, vertices=[v])
    reduced[v1].add(v2)
    reduced[v2].add(v1)
    _check_minimal(reduced, "suppress case")
    paths = _solve(reduced)
    using = [i for i, p in enumerate(paths) if (v1, v2) in _path_edges(p)]
    i1, i2 = using
    p1, p2 = paths[i1], paths[i2]
    # insert v into the second path
    k = next(j for j in range(len(p2) - 1) if {p2[j], p2[j + 1]} == {v1, v2})
    t2 = p2[:k + 1] + (v,) + p2[k + 1:]
    # cut the first path at v1 v2 and hang v off both halves
    k = next(j for j in range(len(p1) - 1) if {p1[j], p1[j + 1]} == {v1, v2})
    left, right = p1[:k + 1], p1[k + 1:]
    halves = [left + (v,), (v,) + right]
    out = [p for j, p in enumerate(paths) if j not in (i1, i2)]
    return out + [t2] + halves


def _delete_case(rest: Adj, v: int, v1: int, v2: int) -> list[Path]:
    paths = _solve(rest)
    for i, q1 in _ending_at(paths, v1):
        for j, q2 in _ending_at(paths, v2):
            if i != j:
                out = [p for k, p in enumerate(paths) if k not in (i, j)]
                return out + [q1 + (v,), q2 + (v,), (v1, v, v2)]
    raise Falsification(CPPDC_CLAIM, "no two distinct end paths at the neighbours of a degree-2 vertex",
                        witness={"vertex": v})


def cppdc_minimal_2ec(g: GeneralGraph) -> PathCollection:
    """A CPPDC of a minimal 2-edge-connected simple graph on at least three vertices.

    Every recursive step and the final collection are checked; a failure is
    reported as a :class:`Falsification`.
    """
    if g.n < 3 or not is_minimal_2ec(g):
        raise ConstructionError("input must be a minimal 2-edge-connected graph on at least 3 vertices")
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    result = PathCollection(tuple(_solve(adj))).canonical()
    verdict = verify_cppdc(g, result)
    if not verdict:
        raise Falsification(CPPDC_CLAIM, f"constructed collection fails: {verdict.reason}",
                            witness={"paths": result.to_text()})
    return result


# -- exhaustive search -----------------------------------------------------------

def all_paths(g: GeneralGraph, *, edgeless: bool = True) -> list[Path]:
    """Every path of g once, read from its smaller end, in sorted order."""
    found: list[Path] = []

    def grow(p):
        if p[0] < p[-1]:
            found.append(p)
        for w in sorted(g.adj[p[-1]]):
            if w not in p:
                grow(p + (w,))

    for s in range(g.n):
        if edgeless:
            found.append((s,))
        for w in sorted(g.adj[s]):
            grow((s, w))
    return sorted(found)


def enumerate_ppdcs(g: GeneralGraph, *, compatible: bool = False) -> Iterator[PathCollection]:
    """Every PPDC of g (as a multiset of paths) exactly once, or only the CPPDCs.

    Backtracking picks the open edge with the fewest fitting paths and
    chooses every remaining path through it in one step (an unordered pair
    when it is still uncovered), so no collection repeats.
    """
    paths = all_paths(g, edgeless=not compatible)
    edges = list(g.edges)
    eid = {e: i for i, e in enumerate(edges)}
    path_edges = [[eid[e] for e in _path_edges(p)] for p in paths]
    path_ends = [[(v, eid[e] if e is not None else None) for v, e in _end_edges(p)] for p in paths]
    through = [[] for _ in edges]
    for i, es in enumerate(path_edges):
        for e in es:
            through[e].append(i)
    need = [2] * len(edges)
    ends_left = [2] * g.n
    end_used: list[list] = [[] for _ in range(g.n)]
    chosen: list[int] = []

    def fits(i):
        if any(need[e] == 0 for e in path_edges[i]):
            return False
        ends = path_ends[i]
        c = Counter(v for v, _ in ends)
        if any(ends_left[v] < k for v, k in c.items()):
            return False
        return not compatible or all(e not in end_used[v] for v, e in ends)

    def apply(i, sign):
        for e in path_edges[i]:
            need[e] -= sign
        for v, e in path_ends[i]:
            ends_left[v] -= sign
            if sign > 0:
                end_used[v].append(e)
            else:
                end_used[v].remove(e)

    def finish():
        # the remaining ends can only come from edgeless paths
        extra = []
        for v in range(g.n):
            if ends_left[v] % 2:
                return None
            if ends_left[v]:
                if compatible:
                    return None
                extra += [(v,)] * (ends_left[v] // 2)
        return PathCollection(tuple(paths[i] for i in chosen) + tuple(extra)).canonical()

    def singles(e):
        return [i for i in through[e] if fits(i)]

    def rec():
        open_edges = [e for e in range(len(edges)) if need[e] > 0]
        if not open_edges:
            pc = finish()
            if pc is not None:
                yield pc
            return
        # branch on the most constrained edge and settle all of its paths at once
        options = {e: singles(e) for e in open_edges}
        e = min(open_edges, key=lambda x: (len(options[x]) - need[x], x))
        if need[e] == 1:
            groups = [(i,) for i in options[e]]
        else:
            groups = []
            for a, i in enumerate(options[e]):
                apply(i, 1)
                groups += [(i, j) for j in options[e][a:] if need[e] > 0 and fits(j)]
                apply(i, -1)
        for group in groups:
            for i in group:
                apply(i, 1)
                chosen.append(i)
            yield from rec()
            for i in reversed(group):
                chosen.pop()
                apply(i, -1)

    yield from rec()


def find_cppdc(g: GeneralGraph) -> PathCollection | None:
    return next(enumerate_ppdcs(g, compatible=True), None)


# -- corpora -----------------------------------------------------------------------

def cycle_graph(n: int) -> GeneralGraph:
    return GeneralGraph(n, tuple(edge_key(i, (i + 1) % n) for i in range(n)))


def subdivided_theta(lengths: Iterable[int]) -> GeneralGraph:
    """Two branch vertices 0 and 1 joined by internally disjoint paths of the given lengths."""
    edges = []
    n = 2
    for length in lengths:
        if length < 1:
            raise ConstructionError("theta branches need length at least 1")
        prev = 0
        for _ in range(length - 1):
            edges.append(edge_key(prev, n))
            prev = n
            n += 1
        edges.append(edge_key(prev, 1))
    return GeneralGraph(n, tuple(edges))


def random_cactus(n: int, seed: int | None = None) -> GeneralGraph:
    """Cycles glued at single vertices in a tree-like way; n vertices in total.

    Every edge of a cactus lies on exactly one cycle, so the result is
    minimal 2-edge-connected.
    """
    if n < 3:
        raise ConstructionError("a cactus needs at least 3 vertices")
    rng = random.Random(seed)
    size = rng.choice([s for s in range(3, n + 1) if n - s != 1])
    edges = [edge_key(i, (i + 1) % size) for i in range(size)]
    count = size
    while count < n:
        left = n - count
        k = rng.randint(2, left)           # new vertices on the next cycle
        if left - k == 1:
            k = left
        ring = [rng.randrange(count)] + list(range(count, count + k))
        edges += [edge_key(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
        count += k
    return GeneralGraph(n, tuple(edges))


def subdivide(n: int, edges, extra: Iterable[int]) -> GeneralGraph:
    """Replace edge i of a (multi)graph by a path with ``extra[i]`` inner vertices."""
    out = []
    for (a, b), k in zip(edges, extra):
        prev = a
        for _ in range(k):
            out.append(edge_key(prev, n))
            prev = n
            n += 1
        out.append(edge_key(prev, b))
    return GeneralGraph(n, tuple(out))


def minimal_2ec_corpus(max_n: int = 10, seed: int = 0) -> list[tuple[str, GeneralGraph]]:
    """Labelled minimal 2-edge-connected graphs with 3..max_n vertices.

    Every minimal one from the networkx graph atlas (all graphs up to seven
    vertices), then cycles, subdivided thetas with three and four branches,
    random cacti, and random subdivisions of small multigraphs (kept only
    when minimal).
    """
    rng = random.Random(seed)
    out: list[tuple[str, GeneralGraph]] = []
    for i, h in enumerate(nx.graph_atlas_g()):
        if 3 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            g = GeneralGraph(h.number_of_nodes(), tuple(h.edges()))
            if is_minimal_2ec(g):
                out.append((f"atlas-{i}", g))
    for n in range(3, max_n + 1):
        out.append((f"cycle-{n}", cycle_graph(n)))
    for k in (3, 4):
        for lengths in _branch_lengths(k, max_n):
            out.append((f"theta-{'-'.join(map(str, lengths))}", subdivided_theta(lengths)))
    for n in range(5, max_n + 1):
        for s in range(3):
            out.append((f"cactus-{n}-{s}", random_cactus(n, rng.randrange(10**9))))
    bases = {
        "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "dipole4": (2, [(0, 1)] * 4),
        "triple-bond": (3, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)]),
        "necklace": (3, [(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]),
    }
    for name, (n0, base) in bases.items():
        for s in range(40):
            extra = [rng.randint(0, 2) for _ in base]
            g = subdivide(n0, base, extra) if _simple_after(base, extra) else None
            if g is not None and 3 <= g.n <= max_n and is_minimal_2ec(g):
                out.append((f"{name}-sub-{''.join(map(str, extra))}", g))
    seen = set()
    unique = []
    for name, g in out:
        key = (g.n, g.edges)
        if key not in seen and g.n <= max_n:
            seen.add(key)
            unique.append((name, g))
    return unique


def _branch_lengths(k: int, max_n: int):
    for lengths in combinations_with_replacement(range(2, max_n), k):
        if 2 + sum(l - 1 for l in lengths) <= max_n:
            yield lengths


def _simple_after(base, extra) -> bool:
    seen = Counter(edge_key(a, b) for (a, b), k in zip(base, extra) if k == 0)
    return all(c == 1 for c in seen.values())
