"""Triples of pairwise compatible normal partitions.

Constructions: the loopless recursion, the 3-edge-coloured construction
(with its reduction for parallel pairs), the bipartite construction and the
triangle expansion. Analysis: the per-edge internality report and the three
perfect matchings read off an odd triple. Search: an exhaustive, vectorised
scan over marking triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (ConstructionError, Falsification, GuardExceeded, PartitionError,
                     StrongMatchingNotFound)
from .graph import CubicMultigraph, connected_components, structure_report
from .marking import (DEFAULT_GUARD_N, LengthFilter, Marking, enumerate_markings_with_lengths,
                      from_marking, make_filter, markings_compatible, to_marking)
from .reductions import (Reduction, edge_reduction, find_parallel_pair, find_simple_edge,
                         lift_triple, parallel_pair_reduction)
from .search import (EdgeColoring, orientation_with, proper_3_edge_coloring,
                     strong_matching_meeting_2factor, two_factor_cycles)
from .constructions import matching_from_odd_partition, odd_partition_from_matching
from .trails import Trail, TrailPartition, is_normal

THM41 = "three compatible normal partitions exist without loops"
THM49 = "odd compatible triple gives matchings with empty intersection"
PROP42 = "every edge is internal in one or two members of a triple"
FALLBACK_GUARD_N = 10


@dataclass(frozen=True)
class CompatibleTriple:
    t1: TrailPartition
    t2: TrailPartition
    t3: TrailPartition

    @property
    def members(self) -> tuple[TrailPartition, TrailPartition, TrailPartition]:
        return (self.t1, self.t2, self.t3)

    def markings(self, g: CubicMultigraph) -> tuple[Marking, Marking, Marking]:
        return tuple(to_marking(g, t) for t in self.members)

    @classmethod
    def from_markings(cls, g: CubicMultigraph, marks: Sequence[Marking]) -> "CompatibleTriple":
        return cls(*(from_marking(g, m) for m in marks))

    def validate(self, g: CubicMultigraph) -> None:
        """Raise PartitionError unless all members are normal and pairwise compatible."""
        marks = []
        for i, t in enumerate(self.members, 1):
            if not is_normal(g, t):
                raise PartitionError(f"member {i} is not normal")
            marks.append(to_marking(g, t))
        for i in range(3):
            for j in range(i + 1, 3):
                verdict = markings_compatible(marks[i], marks[j])
                if not verdict:
                    raise PartitionError(f"members {i + 1} and {j + 1} are not compatible: {verdict.reason}")


# -- internality report ------------------------------------------------------------

@dataclass(frozen=True)
class EdgeInternality:
    counts: tuple[int, ...]                 # per edge: members where it is internal
    singleton_member: dict[int, int]        # count-2 edge -> member (1-based) where it is alone
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = []
        for e, c in enumerate(self.counts):
            extra = f" {self.singleton_member[e]}" if e in self.singleton_member else ""
            lines.append(f"{e} {c}{extra}")
        return "\n".join(lines) + "\n"


def analyze_triple(g: CubicMultigraph, triple: CompatibleTriple) -> EdgeInternality:
    """Count, for each edge, the members in which it is an internal edge.

    Any count outside {1, 2}, a count-2 edge that is not a length-1 trail of
    the remaining member, or the absence of count-1 edges is recorded as a
    violation (each would contradict a published claim).
    """
    triple.validate(g)
    internal = [set() for _ in range(3)]
    alone = [set() for _ in range(3)]
    for i, t in enumerate(triple.members):
        for tr in t.trails:
            internal[i].update(tr.edges[1:-1])
            if tr.length == 1:
                alone[i].add(tr.edges[0])
    counts = tuple(sum(e in s for s in internal) for e in range(g.m))
    singleton = {}
    violations = []
    for e, c in enumerate(counts):
        if c not in (1, 2):
            violations.append(f"edge {e} is internal in {c} members")
        elif c == 2:
            (k,) = [i for i in range(3) if e not in internal[i]]
            if e in alone[k]:
                singleton[e] = k + 1
            else:
                violations.append(f"edge {e} is internal twice but not a length-1 trail of member {k + 1}")
    if g.m and 1 not in counts:
        violations.append("no edge is internal in exactly one member")
    return EdgeInternality(counts, singleton, tuple(violations))


def fan_raspaud_from_triple(g: CubicMultigraph, triple: CompatibleTriple) -> tuple[frozenset[int], ...]:
    """The perfect matchings of odd edges of the three (odd) members."""
    triple.validate(g)
    ms = tuple(matching_from_odd_partition(g, t) for t in triple.members)
    common = ms[0] & ms[1] & ms[2]
    if common:
        raise Falsification(THM49, f"edges {sorted(common)} lie in all three matchings", witness=sorted(common))
    return ms


# -- component plumbing ------------------------------------------------------------

def _component(g: CubicMultigraph, verts: Sequence[int]):
    index = {w: i for i, w in enumerate(verts)}
    emap = [e for e, (a, b) in enumerate(g.edges) if a in index]
    sub = CubicMultigraph(len(verts), [(index[a], index[b]) for a, b in (g.edges[e] for e in emap)])
    return sub, list(verts), emap


def _per_component(g: CubicMultigraph, solve) -> tuple[Marking, Marking, Marking]:
    comps = connected_components(g.n, g.edges)
    if len(comps) == 1:
        return solve(g)
    marks = [[-1] * g.n for _ in range(3)]
    for verts in comps:
        sub, vmap, emap = _component(g, verts)
        for i, mk in enumerate(solve(sub)):
            for w, e in enumerate(mk.marks):
                marks[i][vmap[w]] = emap[e]
    return tuple(Marking(tuple(m)) for m in marks)


def theta_triple_marks(g: CubicMultigraph) -> tuple[Marking, Marking, Marking]:
    """The three rotations of the Euler trail of the 2-vertex theta graph."""
    e0, e1, e2 = range(3)
    return Marking((e0, e2)), Marking((e1, e0)), Marking((e2, e1))


# -- loopless recursion ------------------------------------------------------------

def _claim1_table(red: Reduction):
    n = red.names
    return [((n["a"], n["e2"]), (n["e1"], n["c"]), (n["e2"], n["e1"]))]


def _claim2_table(red: Reduction):
    """(u, v) marks of Q1..Q4 and of the subdivided member, in preference order."""
    n = red.names
    a, b, c, d, h = n["a"], n["b"], n["c"], n["d"], n["h"]
    q = {1: (b, h), 2: (b, d), 3: (a, h), 4: (a, d)}
    pairs = [(1, 4), (4, 1), (2, 3), (3, 2)]
    rows = []
    for k in range(3):
        for x, y in pairs:
            others = iter([q[x], q[y]])
            rows.append(tuple((c, c) if i == k else next(others) for i in range(3)))
    return rows


def three_compatible(g: CubicMultigraph, guard_n: int = FALLBACK_GUARD_N,
                     log: list[str] | None = None) -> CompatibleTriple:
    """Three pairwise compatible normal partitions of a loopless cubic graph.

    Parallel pairs with distinct outside neighbours are reduced first, then
    edges whose ends have three distinct neighbours; the 2-vertex theta graph
    is the base. Lifts are taken from the proof's table when it applies and
    from a search over the new marks otherwise. A graph with neither
    reduction falls back to exhaustive search (up to ``guard_n`` vertices).
    """
    if any(a == b for a, b in g.edges):
        raise ConstructionError("the graph has a loop; no compatible pair exists")
    log = log if log is not None else []
    marks = _loopless_marks(g, guard_n, log)
    triple = CompatibleTriple.from_markings(g, marks)
    triple.validate(g)
    return triple


def _loopless_marks(g, guard_n, log):
    comps = connected_components(g.n, g.edges)
    if len(comps) > 1:
        return _per_component(g, lambda sub: _loopless_marks(sub, guard_n, log))
    if g.n == 2:
        log.append("base theta")
        return theta_triple_marks(g)
    pp = find_parallel_pair(g)
    if pp is not None:
        red, label = parallel_pair_reduction(g, *pp), "claim 1"
        table = _claim1_table(red)
    else:
        e = find_simple_edge(g)
        if e is None:
            log.append(f"fallback search n={g.n}")
            return _fallback(g, guard_n)
        red, label = edge_reduction(g, e), "claim 2"
        table = _claim2_table(red)
    small = _loopless_marks(red.small, guard_n, log)
    lifted = lift_triple(red, small, preferred=table)
    if lifted is None:
        log.append(f"{label} n={g.n}: no lift, fallback search")
        return _fallback(g, guard_n)
    log.append(f"{label} n={g.n} ({lifted[1]})")
    return lifted[0]


def _fallback(g, guard_n):
    if g.n > guard_n:
        raise GuardExceeded(f"fallback search needs n <= {guard_n}, got {g.n}")
    found = search_compatible_triple(g, guard_n=guard_n)
    if found.triple is None:
        raise Falsification(THM41, "exhaustive search found no compatible triple", witness=g.to_text())
    return found.triple.markings(g)


# -- coloured construction ---------------------------------------------------------

def is_odd_shape(p: TrailPartition) -> bool:
    return p.is_odd


def is_length3(p: TrailPartition) -> bool:
    return p.max_length == 3


def is_at_most4(p: TrailPartition) -> bool:
    return p.max_length <= 4


COLORED_SHAPES = (is_odd_shape, is_length3, is_at_most4)


def _rotated_cycle(cycle: Trail, start: int, last_edge: int) -> Trail:
    i = cycle.vertices.index(start)
    verts = cycle.vertices[i:-1] + cycle.vertices[:i] + (start,)
    edges = cycle.edges[i:] + cycle.edges[:i]
    t = Trail(verts, edges)
    return t if t.edges[-1] == last_edge else t.reversed()


def _ends_with(t: Trail, w: int, e: int) -> bool:
    return (t.end == w and t.edges[-1] == e) or (t.start == w and t.edges[0] == e)


def colored_triple_simple(g: CubicMultigraph, coloring: EdgeColoring,
                          pair: tuple[int, int] = (0, 1)) -> CompatibleTriple:
    """The construction for simple 3-edge-coloured graphs.

    ``pair`` names the two colours forming the 2-factor; the third colour
    class is the perfect matching. With a strong matching ``u_i v_i`` (one
    edge per cycle) and ``x_i`` the matching partner of ``u_i``:

    * T is odd: ``x_i u_i`` followed by the whole cycle from ``u_i`` back to
      ``u_i``, ending with ``v_i u_i``; other matching edges stay alone.
    * T' has length 3: the matching construction with each cycle oriented so
      that ``v_i`` follows ``u_i``.
    * T'' has length at most 4: the reversed construction, where the trail
      ending ``v_i u_i`` is extended by the cycle edge before ``u_i`` and the
      trail through ``u_i x_i`` loses that edge.
    """
    (gamma,) = {0, 1, 2} - set(pair)
    factor = [e for e, c in enumerate(coloring.colors) if c in pair]
    cycles = two_factor_cycles(g, factor)
    strong = strong_matching_meeting_2factor(g, coloring, pair)
    matching = sorted(coloring.color_class(gamma))
    by_cycle = {}
    for e in strong:
        u, v = g.edges[e]
        (k,) = [k for k, c in enumerate(cycles) if u in c.vertices]
        by_cycle[k] = (u, v, e)

    trails = []
    used_gamma = set()
    for k, cyc in enumerate(cycles):
        u, v, e = by_cycle[k]
        gx = coloring.edge_of_color(g, u, gamma)
        used_gamma.add(gx)
        trails.append(Trail((g.other_end(gx, u), u), (gx,)).then(_rotated_cycle(cyc, u, e)))
    trails += [Trail(g.edges[e], (e,)) for e in matching if e not in used_gamma]
    t_odd = TrailPartition(tuple(trails))

    o = orientation_with(g, cycles, {u: v for u, v, _ in by_cycle.values()})
    t_len3 = odd_partition_from_matching(g, matching, o)

    work = list(odd_partition_from_matching(g, matching, o.reversed()).trails)
    for u, v, e in (by_cycle[k] for k in sorted(by_cycle)):
        back, p = o.in_edge[u], o.pred[u]
        (r,) = [i for i, t in enumerate(work) if _ends_with(t, u, e)]
        (s,) = [i for i, t in enumerate(work) if _ends_with(t, p, back)]
        longer = work[r].oriented_to_end_at(u).then(Trail((u, p), (back,)))
        shorter = work[s].oriented_to_end_at(p).reversed()
        shorter = shorter.sub(1, shorter.length)
        work = [t for i, t in enumerate(work) if i not in (r, s)] + [longer, shorter]
    t_le4 = TrailPartition(tuple(work))
    return CompatibleTriple(t_odd, t_len3, t_le4)


def _colored_marks(g: CubicMultigraph, coloring: EdgeColoring, log: list[str]):
    comps = connected_components(g.n, g.edges)
    if len(comps) > 1:
        marks = [[-1] * g.n for _ in range(3)]
        for verts in comps:
            sub, vmap, emap = _component(g, verts)
            sub_col = EdgeColoring(tuple(coloring.colors[e] for e in emap))
            for i, mk in enumerate(_colored_marks(sub, sub_col, log)):
                for w, e in enumerate(mk.marks):
                    marks[i][vmap[w]] = emap[e]
        return tuple(Marking(tuple(m)) for m in marks)
    if g.n == 2:
        log.append("base theta")
        return theta_triple_marks(g)
    pp = find_parallel_pair(g)
    if pp is not None:
        u, v, e1, e2, a, c = pp
        red = parallel_pair_reduction(g, *pp)
        small_col = EdgeColoring(tuple(coloring.colors[e] for e in red.emap[:-1]) + (coloring.colors[a],))
        small = _colored_marks(red.small, small_col, log)
        # the explicit lift for an edge internal only in the odd member
        table = [((e2, e2), (e1, c), (a, e1))]
        lifted = lift_triple(red, small, preferred=table, shapes=COLORED_SHAPES, permute=True)
        if lifted is None:
            raise ConstructionError(f"no shaped lift through the parallel pair {u}-{v}")
        log.append(f"parallel pair n={g.n} ({lifted[1]})")
        return lifted[0]
    last_error = None
    for pair in ((0, 1), (1, 2), (0, 2)):
        try:
            triple = colored_triple_simple(g, coloring, pair)
        except StrongMatchingNotFound as exc:
            last_error = exc
            continue
        log.append(f"strong matching n={g.n} colours {pair}")
        return triple.markings(g)
    raise last_error


def three_compatible_colored(g: CubicMultigraph, coloring: EdgeColoring | None = None,
                             log: list[str] | None = None) -> CompatibleTriple:
    """Triple of shapes (odd, length 3, length at most 4) from a 3-edge-colouring."""
    if coloring is None:
        coloring = proper_3_edge_coloring(g)
        if coloring is None:
            raise ConstructionError("the graph has no proper 3-edge-colouring")
    if not coloring.is_proper(g):
        raise ConstructionError("the colouring is not proper")
    log = log if log is not None else []
    triple = CompatibleTriple.from_markings(g, _colored_marks(g, coloring, log))
    triple.validate(g)
    for i, shape in enumerate(COLORED_SHAPES):
        if not shape(triple.members[i]):
            raise ConstructionError(f"member {i + 1} does not have the expected shape")
    return triple


# -- bipartite construction --------------------------------------------------------

def three_compatible_bipartite(g: CubicMultigraph, coloring: EdgeColoring | None = None) -> CompatibleTriple:
    """Length-3 triple: member k has middle edges of colour k+1, entered from
    colour k at the B side and left by colour k+2 at the W side (mod 3)."""
    report = structure_report(g)
    if not report.is_bipartite:
        raise ConstructionError("the graph is not bipartite")
    if coloring is None:
        coloring = proper_3_edge_coloring(g)
    if coloring is None or not coloring.is_proper(g):
        raise ConstructionError("no proper 3-edge-colouring available")
    white = set(report.bipartition[0])
    members = []
    for k in range(3):
        first, middle, last = k, (k + 1) % 3, (k + 2) % 3
        trails = []
        for e in sorted(coloring.color_class(middle)):
            a, b = g.edges[e]
            w, bl = (a, b) if a in white else (b, a)
            e_in = coloring.edge_of_color(g, bl, first)
            e_out = coloring.edge_of_color(g, w, last)
            trails.append(Trail((g.other_end(e_in, bl), bl, w, g.other_end(e_out, w)), (e_in, e, e_out)))
        members.append(TrailPartition(tuple(trails)))
    triple = CompatibleTriple(*members)
    triple.validate(g)
    return triple


# -- triangle expansion ------------------------------------------------------------

def triangle_expand(g: CubicMultigraph, v: int, triple: CompatibleTriple) -> tuple[CubicMultigraph, CompatibleTriple]:
    """Replace ``v`` by a triangle and rebuild an odd compatible triple.

    The triangle vertex attached to the edge member k marks at ``v`` keeps
    that mark; member k's passage through ``v`` detours around the triangle
    via that vertex, and the remaining triangle edge becomes a length-1 trail.
    """
    triple.validate(g)
    if not all(t.is_odd for t in triple.members):
        raise ConstructionError("triangle expansion needs an odd triple")
    eps = [mk[v] for mk in triple.markings(g)]
    tri_v = (v, g.n, g.n + 1)
    edges = list(g.edges)
    for i, e in enumerate(eps):
        a, b = edges[e]
        edges[e] = (tri_v[i], b) if a == v else (a, tri_v[i])
    m = g.m
    tri_e = {frozenset((0, 1)): m, frozenset((1, 2)): m + 1, frozenset((0, 2)): m + 2}
    edges += [(tri_v[0], tri_v[1]), (tri_v[1], tri_v[2]), (tri_v[0], tri_v[2])]
    g2 = CubicMultigraph(g.n + 2, edges)
    which = {e: i for i, e in enumerate(eps)}

    def rewrite(tr: Trail) -> Trail:
        verts, es = [], []
        for j, w in enumerate(tr.vertices):
            if j > 0:
                es.append(tr.edges[j - 1])
            if w != v:
                verts.append(w)
                continue
            ia = which[tr.edges[j - 1]] if j > 0 else None
            ib = which[tr.edges[j]] if j < tr.length else None
            if ia is None or ib is None:
                verts.append(tri_v[ia if ib is None else ib])
                continue
            (ic,) = {0, 1, 2} - {ia, ib}
            verts += [tri_v[ia], tri_v[ic], tri_v[ib]]
            es += [tri_e[frozenset((ia, ic))], tri_e[frozenset((ic, ib))]]
        return Trail(tuple(verts), tuple(es))

    members = []
    for k, t in enumerate(triple.members):
        new = [rewrite(tr) for tr in t.trails]
        (ia, ib) = sorted({0, 1, 2} - {k})
        a, b = tri_v[ia], tri_v[ib]
        new.append(Trail((a, b), (tri_e[frozenset((ia, ib))],)))
        members.append(TrailPartition(tuple(new)))
    out = CompatibleTriple(*members)
    out.validate(g2)
    if not all(t.is_odd for t in out.members):
        raise ConstructionError("expanded triple is not odd")
    return g2, out


# -- exhaustive search -------------------------------------------------------------

@dataclass
class TripleSearch:
    triple: CompatibleTriple | None
    candidates: tuple[int, int, int]
    pairs_checked: int = 0
    count: int | None = None
    reason: str = ""
    shapes: tuple[str, str, str] = ("any", "any", "any")


def parse_shape(name: str) -> LengthFilter | None:
    """``any``, ``odd``, ``leK`` (longest trail at most K) or ``odd-leK``."""
    name = name.strip()
    if name in ("any", ""):
        return None
    odd = name.startswith("odd")
    rest = name[3:].lstrip("-") if odd else name
    if rest and not (rest.startswith("le") and rest[2:].isdigit()):
        raise ValueError(f"unknown shape {name!r}")
    return make_filter(odd=odd, max_length=int(rest[2:]) if rest else None)


def search_compatible_triple(g: CubicMultigraph, shapes: Sequence[str] = ("any", "any", "any"),
                             guard_n: int | None = DEFAULT_GUARD_N, count: bool = False) -> TripleSearch:
    """Exhaustive scan for three pairwise compatible normal partitions.

    Member ``i`` must satisfy shape ``shapes[i]``. Marks are encoded as local
    indices 0..2 at each vertex, so once two compatible members are fixed the
    third marking is forced (``3 - a - b`` vertex by vertex) and only has to
    be looked up. The lexicographically least first member wins, then the
    least second member. With ``count`` every ordered triple is counted
    (unordered when the three shapes coincide).
    """
    shapes = tuple(shapes)
    filters = [parse_shape(s) for s in shapes]
    by_shape: dict[str, list] = {}
    for s, f in zip(shapes, filters):
        if s not in by_shape:
            by_shape[s] = [mk for mk, lengths in enumerate_markings_with_lengths(g, guard_n)
                           if f is None or f(lengths)]
    lists = [by_shape[s] for s in shapes]
    sizes = tuple(len(x) for x in lists)
    result = TripleSearch(None, sizes, shapes=shapes)
    loops = [w for w in range(g.n) if len(g.incident_edges(w)) < 3]
    if loops:
        result.reason = f"vertex {loops[0]} carries a loop, so every normal partition marks it"
        result.count = 0 if count else None
        return result
    if not all(sizes):
        result.reason = "some member has no candidate partition"
        result.count = 0 if count else None
        return result
    local = [{e: i for i, e in enumerate(sorted(g.incident_edges(w)))} for w in range(g.n)]

    def encode(items):
        return np.array([[local[w][e] for w, e in enumerate(mk.marks)] for mk in items], dtype=np.int8)

    A, B, C = (encode(x) for x in lists)
    weights = 3 ** np.arange(g.n, dtype=np.int64)
    c_codes = C.astype(np.int64) @ weights
    c_index = {int(code): i for i, code in enumerate(c_codes)}
    total = 0
    for i, row in enumerate(A):
        mask = (B != row).all(axis=1)
        if not mask.any():
            continue
        b_idx = np.nonzero(mask)[0]
        result.pairs_checked += len(b_idx)
        needed = (3 - row.astype(np.int64) - B[b_idx].astype(np.int64)) @ weights
        hits = np.isin(needed, c_codes)
        if not hits.any():
            continue
        if count:
            total += int(hits.sum())
            continue
        j = int(b_idx[np.argmax(hits)])
        k = c_index[int(needed[np.argmax(hits)])]
        result.triple = CompatibleTriple.from_markings(g, (lists[0][i], lists[1][j], lists[2][k]))
        result.triple.validate(g)
        return result
    if count:
        result.count = total // 6 if len(set(shapes)) == 1 else total
        if total:
            return result
    result.reason = "exhaustive search over all candidate triples found none"
    return result
