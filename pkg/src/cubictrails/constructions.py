"""Normal partitions built from perfect matchings, perfect path partitions,
hamiltonian paths and cycles, and from markings."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .errors import ConstructionError, PartitionError
from .graph import CubicMultigraph
from .marking import Marking, from_marking
from .search import Orientation, default_orientation, is_perfect_matching
from .trails import Trail, TrailPartition, check_cover, is_normal, odd_edges


# -- perfect matchings -------------------------------------------------------------

def odd_partition_from_matching(g: CubicMultigraph, matching: Iterable[int],
                                orientation: Orientation | None = None) -> TrailPartition:
    """One length-3 trail ``o(u) + uv + o(v)`` per matching edge ``uv``.

    ``o(w)`` is the edge leaving ``w`` along its oriented 2-factor cycle, so
    the trail ends at the two successors and every vertex marks its incoming
    cycle edge. The reversed orientation therefore gives a compatible twin.
    """
    matching = sorted(set(matching))
    if not is_perfect_matching(g, matching):
        raise ConstructionError("edge set is not a perfect matching")
    o = orientation or default_orientation(g, matching)
    trails = []
    for e in matching:
        u, v = g.edges[e]
        trails.append(Trail((o.succ[u], u, v, o.succ[v]), (o.out_edge[u], e, o.out_edge[v])))
    return TrailPartition(tuple(trails))


def matching_from_odd_partition(g: CubicMultigraph, t: TrailPartition) -> frozenset[int]:
    """Odd edges of every trail; a perfect matching when ``t`` is normal and odd."""
    if not t.is_odd:
        raise PartitionError("the partition has an even trail")
    out = frozenset(e for tr in t.trails for e in odd_edges(tr))
    if not is_perfect_matching(g, out):
        raise PartitionError("odd edges do not form a perfect matching; is the partition normal?")
    return out


# -- perfect path partitions ---------------------------------------------------------

def _as_trail(g: CubicMultigraph, path) -> Trail:
    if isinstance(path, Trail):
        return path
    verts = list(path)
    edges = []
    for a, b in zip(verts, verts[1:]):
        between = g.edges_between(a, b)
        if not between:
            raise ConstructionError(f"vertices {a} and {b} are not adjacent")
        edges.append(min(between))
    return Trail(tuple(verts), tuple(edges))


def _leftover_components(g: CubicMultigraph, leftover: set[int]) -> list[Trail]:
    """Components of a max-degree-2 edge set as walks (paths or closed cycles).

    Paths run from their lower-id end; cycles start at their lowest vertex
    along the lowest edge id there.
    """
    deg = Counter()
    for e in leftover:
        a, b = g.edges[e]
        deg[a] += 1
        deg[b] += 1
    sub = sorted(leftover)
    used: set[int] = set()
    walks = []

    def walk_from(s):
        verts, edges = [s], []
        v = s
        while True:
            nxt = [e for e in g.incident_edges(v) if e in leftover and e not in used]
            if not nxt:
                return Trail(tuple(verts), tuple(edges))
            e = min(nxt)
            used.add(e)
            edges.append(e)
            v = g.other_end(e, v)
            verts.append(v)

    for s in sorted({v for e in sub for v in g.edges[e] if deg[v] == 1}):
        if any(e in leftover and e not in used for e in g.incident_edges(s)):
            walks.append(walk_from(s))
    for e in sub:
        if e not in used:
            a, b = g.edges[e]
            walks.append(walk_from(min(a, b)))
    return walks


def partition_from_perfect_path_partition(g: CubicMultigraph, paths: Sequence,
                                          flip: Iterable[int] = ()) -> TrailPartition:
    """Extend every path by one leftover edge at each end.

    ``paths`` are vertex sequences or trails, pairwise vertex-disjoint and
    covering V(G), each with at least one edge. The leftover edges form paths
    and cycles; each one is walked in a default direction, reversed for the
    component indices listed in ``flip``. Every path end then takes the edge
    leaving it, and the first edge of every leftover path becomes a length-1
    trail.
    """
    trails = [_as_trail(g, p) for p in paths]
    seen = Counter(v for t in trails for v in t.vertices)
    if any(c > 1 for c in seen.values()) or len(seen) != g.n:
        raise ConstructionError("paths must be vertex-disjoint and cover every vertex")
    if any(t.length == 0 or not t.is_path() or not t.is_valid(g) for t in trails):
        raise ConstructionError("every path needs at least one edge and distinct vertices")
    on_paths = {e for t in trails for e in t.edges}
    comps = _leftover_components(g, {e for e in range(g.m) if e not in on_paths})
    flip = set(flip)
    out_edge: dict[int, tuple[int, int]] = {}
    singles = []
    for i, w in enumerate(comps):
        w = w.reversed() if i in flip else w
        for j, e in enumerate(w.edges):
            out_edge.setdefault(w.vertices[j], (e, w.vertices[j + 1]))
        if not w.is_closed:
            singles.append(w.sub(0, 1))
    result = []
    for t in trails:
        (es, ws), (ee, we) = out_edge[t.start], out_edge[t.end]
        result.append(Trail((ws, t.start), (es,)).then(t).then(Trail((t.end, we), (ee,))))
    return _validated(g, TrailPartition(tuple(result + singles)))


def _validated(g: CubicMultigraph, p: TrailPartition) -> TrailPartition:
    check_cover(g, p)
    if not is_normal(g, p):
        raise ConstructionError("construction produced a partition that is not normal")
    return p


# -- hamiltonicity ---------------------------------------------------------------

def partition_from_hamiltonian_path(g: CubicMultigraph, path, ends: tuple[int, int] | None = None) -> TrailPartition:
    """One trail of length n+1 through a hamiltonian path, plus a matching.

    ``ends`` picks the extension edges at the first and the last path vertex;
    by default the lexicographically first distinct pair giving a normal
    partition is used.
    """
    p = _as_trail(g, path)
    if p.length != g.n - 1 or not p.is_path() or not p.is_valid(g):
        raise ConstructionError("not a hamiltonian path")
    rest = [e for e in range(g.m) if e not in set(p.edges)]
    first = [e for e in rest if p.start in g.edges[e]]
    last = [e for e in rest if p.end in g.edges[e]]
    options = [ends] if ends is not None else [(a, b) for a in first for b in last if a != b]
    for a, b in options:
        if a == b or a not in first or b not in last:
            continue
        try:
            main = Trail((g.other_end(a, p.start), p.start), (a,)).then(p).then(
                Trail((p.end, g.other_end(b, p.end)), (b,)))
        except ValueError:
            continue
        singles = [Trail(g.edges[e], (e,)) for e in rest if e not in (a, b)]
        cand = TrailPartition(tuple([main] + singles))
        if all(t.is_valid(g) for t in cand.trails) and is_normal(g, cand):
            return cand
    raise ConstructionError("no pair of distinct end extensions gives a normal partition")


def extract_hamiltonian_path(g: CubicMultigraph, t: TrailPartition) -> Trail:
    if not is_normal(g, t):
        raise PartitionError("partition is not normal")
    if t.max_length != g.n + 1:
        raise ConstructionError(f"longest trail has length {t.max_length}, expected n+1 = {g.n + 1}")
    longest = max(t.trails, key=lambda tr: tr.length)
    inner = longest.sub(1, longest.length - 1)
    if not inner.is_path():
        raise ConstructionError("inner part of the longest trail repeats a vertex")
    return inner


def check_lengths(g: CubicMultigraph, lengths: Sequence[int]) -> None:
    if len(lengths) != g.n // 2:
        raise ConstructionError(f"need exactly n/2 = {g.n // 2} lengths, got {len(lengths)}")
    if sum(lengths) != g.m:
        raise ConstructionError(f"lengths must sum to 3n/2 = {g.m}")
    if any(l < 1 or l == 2 for l in lengths):
        raise ConstructionError("every length must be 1 or at least 3")


def partition_with_lengths(g: CubicMultigraph, cycle, lengths: Sequence[int]) -> TrailPartition:
    """Normal partition with the prescribed trail lengths on a hamiltonian graph.

    Each length l >= 3 becomes a path with l - 2 edges; those paths are laid
    one after another along the hamiltonian cycle and extended at both ends.
    """
    check_lengths(g, lengths)
    c = _as_trail(g, cycle)
    if c.length != g.n or not c.is_closed or len(set(c.vertices[:-1])) != g.n or not c.is_valid(g):
        raise ConstructionError("not a hamiltonian cycle")
    pos = 0
    paths = []
    for l in sorted((l for l in lengths if l >= 3), reverse=True):
        lam = l - 2
        paths.append(c.sub(pos, pos + lam))
        pos += lam + 1
    assert pos == g.n
    return partition_from_perfect_path_partition(g, paths)


def admissible_length_multisets(n: int) -> list[tuple[int, ...]]:
    """Every sorted multiset of n/2 lengths in {1} u {3, 4, ...} summing to 3n/2."""
    k, total = n // 2, 3 * n // 2
    out = []

    def rec(prefix, remaining_count, remaining_sum, low):
        if remaining_count == 0:
            if remaining_sum == 0:
                out.append(tuple(prefix))
            return
        for l in range(low, remaining_sum + 1):
            if l == 2:
                continue
            if l * remaining_count > remaining_sum:
                break
            rec(prefix + [l], remaining_count - 1, remaining_sum - l, l)

    rec([], k, total, 1)
    return out


# -- markings ------------------------------------------------------------------------

def partition_from_transversal(g: CubicMultigraph, marking: Marking) -> TrailPartition:
    """Alias of :func:`from_marking` under its theorem-facing name."""
    return from_marking(g, marking)
