"""Graph reductions used by the inductive triple constructions, and the
lifting of markings back through them.

A reduction deletes two adjacent vertices ``u, v`` and reconnects their
outside neighbours with new edges. Every construction that rebuilds a
partition of the larger graph from one of the smaller graph keeps the mark
of every surviving vertex, after translating a new edge into the deleted
edge it replaced at that vertex. Only the marks at ``u`` and ``v`` are new,
so lifting a marking means choosing those two marks; validity and shape are
then checked by rebuilding the partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Sequence

from .graph import CubicMultigraph
from .marking import Marking, find_unmarked_cycle, from_marking
from .trails import TrailPartition

Shape = Callable[[TrailPartition], bool]


@dataclass(frozen=True)
class Reduction:
    big: CubicMultigraph
    small: CubicMultigraph
    kind: str                              # "parallel-pair" or "edge"
    u: int
    v: int
    vmap: tuple[int, ...]                  # small vertex -> big vertex
    emap: tuple[int, ...]                  # small edge -> big edge, -1 for new edges
    # new small edge -> {small endpoint: big edge it stands for at that endpoint}
    translate: dict[int, dict[int, int]] = field(default_factory=dict)
    # named big edges around u and v, for reporting and preference tables
    names: dict[str, int] = field(default_factory=dict)

    def lift_partial(self, small_marking: Marking) -> list[int | None]:
        marks: list[int | None] = [None] * self.big.n
        for w, e in enumerate(small_marking.marks):
            marks[self.vmap[w]] = self.translate[e][w] if e in self.translate else self.emap[e]
        return marks


def _remove_and_join(g: CubicMultigraph, u: int, v: int, new_pairs, kind, names) -> Reduction:
    keep_v = [w for w in range(g.n) if w not in (u, v)]
    index = {w: i for i, w in enumerate(keep_v)}
    keep_e = [e for e, (a, b) in enumerate(g.edges) if not {a, b} & {u, v}]
    edges = [(index[a], index[b]) for a, b in (g.edges[e] for e in keep_e)]
    translate = {}
    for (x, ex), (y, ey) in new_pairs:
        translate[len(edges)] = {index[x]: ex, index[y]: ey}
        edges.append((index[x], index[y]))
    small = CubicMultigraph(len(keep_v), edges)
    emap = tuple(keep_e) + (-1,) * len(new_pairs)
    return Reduction(g, small, kind, u, v, tuple(keep_v), emap, translate, names)


def find_parallel_pair(g: CubicMultigraph, need_distinct_outside: bool = True):
    """Lowest (u, v, e1, e2, a, c): exactly two parallel edges e1 < e2 between
    u < v, with a = uu' and c = vv' the remaining edges."""
    for e1, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        between = g.edges_between(u, v)
        if len(between) != 2 or e1 != min(between):
            continue
        u, v = min(u, v), max(u, v)
        e2 = max(between)
        (a,) = [e for e in g.incident_edges(u) if e not in between]
        (c,) = [e for e in g.incident_edges(v) if e not in between]
        if g.is_loop(a) or g.is_loop(c):
            continue
        if need_distinct_outside and g.other_end(a, u) == g.other_end(c, v):
            continue
        return u, v, e1, e2, a, c
    return None


def parallel_pair_reduction(g: CubicMultigraph, u: int, v: int, e1: int, e2: int, a: int, c: int) -> Reduction:
    """Delete u, v (joined by e1, e2) and join u' (via a) to v' (via c)."""
    up, vp = g.other_end(a, u), g.other_end(c, v)
    names = {"e1": e1, "e2": e2, "a": a, "c": c}
    return _remove_and_join(g, u, v, [((up, a), (vp, c))], "parallel-pair", names)


def find_simple_edge(g: CubicMultigraph):
    """Lowest edge uv whose ends both have three distinct neighbours."""
    for e, (u, v) in enumerate(g.edges):
        if u != v and len(set(g.neighbors(u))) == 3 and len(set(g.neighbors(v))) == 3:
            return e
    return None


def edge_reduction(g: CubicMultigraph, c: int) -> Reduction:
    """Delete the ends of ``c = uv``; join u' u'' (new f) and v' v'' (new g).

    ``a < b`` are the other edges at u and ``d < h`` those at v.
    """
    u, v = g.edges[c]
    a, b = sorted(e for e in g.incident_edges(u) if e != c)
    d, h = sorted(e for e in g.incident_edges(v) if e != c)
    pairs = [((g.other_end(a, u), a), (g.other_end(b, u), b)),
             ((g.other_end(d, v), d), (g.other_end(h, v), h))]
    names = {"a": a, "b": b, "c": c, "d": d, "h": h}
    return _remove_and_join(g, u, v, pairs, "edge", names)


# -- lifting -------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftOption:
    marking: Marking
    partition: TrailPartition


def lift_options(red: Reduction, small_marking: Marking) -> dict[tuple[int, int], LiftOption]:
    """Every valid completion of a lifted marking, keyed by its (mark u, mark v)."""
    g = red.big
    partial = red.lift_partial(small_marking)
    out = {}
    for mu in sorted(g.incident_edges(red.u)):
        for mv in sorted(g.incident_edges(red.v)):
            marks = list(partial)
            marks[red.u], marks[red.v] = mu, mv
            mk = Marking(tuple(marks))
            if find_unmarked_cycle(g, mk) is None:
                out[(mu, mv)] = LiftOption(mk, from_marking(g, mk))
    return out


def lift_triple(red: Reduction, small: Sequence[Marking],
                preferred: Sequence[tuple[tuple[int, int], ...]] = (),
                shapes: Sequence[Shape | None] = (None, None, None),
                permute: bool = False) -> tuple[tuple[Marking, ...], str] | None:
    """Three pairwise compatible lifts, one per small member.

    Member ``i`` of the result comes from small member ``perm[i]`` and must
    satisfy ``shapes[i]``. Each entry of ``preferred`` lists the (u, v) marks
    of the three members in the identity arrangement; these are tried first
    and reported as ``"table"``. Otherwise every arrangement is searched and
    the result is reported as ``"search"``.
    """
    opts = [lift_options(red, mk) for mk in small]

    def fits(i, src, key):
        o = opts[src].get(key)
        return o is not None and (shapes[i] is None or shapes[i](o.partition))

    for keys in preferred:
        if all(fits(i, i, k) for i, k in enumerate(keys)) and _distinct(keys):
            return tuple(opts[i][k].marking for i, k in enumerate(keys)), "table"
    perms = permutations(range(3)) if permute else [(0, 1, 2)]
    for perm in perms:
        cands = [[k for k in sorted(opts[perm[i]]) if fits(i, perm[i], k)] for i in range(3)]
        for k0 in cands[0]:
            for k1 in cands[1]:
                if k1[0] == k0[0] or k1[1] == k0[1]:
                    continue
                for k2 in cands[2]:
                    if _distinct((k0, k1, k2)):
                        keys = (k0, k1, k2)
                        return tuple(opts[perm[i]][k].marking for i, k in enumerate(keys)), "search"
    return None


def _distinct(keys) -> bool:
    return len({k[0] for k in keys}) == 3 and len({k[1] for k in keys}) == 3
