"""Named cubic graphs and seeded random cubic multigraphs.

Random graphs come from the pairing (configuration) model: the ``3n`` stubs
are shuffled with ``random.Random(seed)`` and paired consecutively; a pairing
containing a forbidden loop or parallel edge is rejected and the shuffle is
repeated with the same generator. Edges are emitted sorted, so a seed fully
determines the edge ids.
"""

from __future__ import annotations

import random
from typing import Callable

from .errors import GraphFormatError
from .graph import CubicMultigraph, edge_key

MAX_PAIRING_ATTEMPTS = 10_000


def theta() -> CubicMultigraph:
    return CubicMultigraph(2, [(0, 1), (0, 1), (0, 1)])


def dumbbell() -> CubicMultigraph:
    return CubicMultigraph(2, [(0, 0), (0, 1), (1, 1)])


def k4() -> CubicMultigraph:
    # a=0 b=1 c=2 d=3
    return CubicMultigraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> CubicMultigraph:
    return CubicMultigraph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def cube() -> CubicMultigraph:
    edges = [(v, v ^ (1 << i)) for v in range(8) for i in range(3) if v < v ^ (1 << i)]
    return CubicMultigraph(8, sorted(edges))


def petersen() -> CubicMultigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicMultigraph(10, [edge_key(a, b) for a, b in outer + spokes + inner])


def prism(k: int) -> CubicMultigraph:
    if k < 3:
        raise GraphFormatError("prism(k) needs k >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return CubicMultigraph(2 * k, [edge_key(a, b) for a, b in edges])


def flower_snark(k: int) -> CubicMultigraph:
    """J_k on vertices a_i=4i, b_i=4i+1, c_i=4i+2, d_i=4i+3."""
    if k < 3 or k % 2 == 0:
        raise GraphFormatError("flower_snark(k) needs an odd k >= 3")
    def a(i): return 4 * (i % k)
    def b(i): return 4 * (i % k) + 1
    def c(i): return 4 * (i % k) + 2
    def d(i): return 4 * (i % k) + 3

    edges = []
    for i in range(k):
        edges += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(i + 1))]
        if i < k - 1:
            edges += [(c(i), c(i + 1)), (d(i), d(i + 1))]
    # the c and d paths close into one cycle of length 2k
    edges += [(c(k - 1), d(0)), (d(k - 1), c(0))]
    return CubicMultigraph(4 * k, [edge_key(x, y) for x, y in edges])


def bridged6() -> CubicMultigraph:
    """Two triangles with one doubled edge each, joined by the bridge 2-5."""
    return CubicMultigraph(6, [(0, 1), (0, 1), (0, 2), (1, 2), (3, 4), (3, 4), (3, 5), (4, 5), (2, 5)])


def _pairing_ok(pairs, allow_loops, allow_multi) -> bool:
    if not allow_loops and any(a == b for a, b in pairs):
        return False
    if not allow_multi and len(set(pairs)) != len(pairs):
        return False
    return True


def random_cubic(n: int, seed: int | None = None, *, allow_loops: bool = False,
                 allow_multi: bool = False) -> CubicMultigraph:
    """Random cubic multigraph on ``n`` vertices from the pairing model."""
    if n < 2 or n % 2:
        raise GraphFormatError("random(n) needs an even n >= 2")
    if n == 2 and not allow_multi:
        raise GraphFormatError("no simple cubic graph on 2 vertices")
    if n == 2 and not allow_loops:
        return theta()
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(3)]
    for _ in range(MAX_PAIRING_ATTEMPTS):
        rng.shuffle(stubs)
        pairs = [edge_key(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        if _pairing_ok(pairs, allow_loops, allow_multi):
            return CubicMultigraph(n, sorted(pairs))
    raise GraphFormatError(f"pairing model failed after {MAX_PAIRING_ATTEMPTS} attempts")


def random_bipartite(n: int, seed: int | None = None, *, allow_multi: bool = False) -> CubicMultigraph:
    """Random bipartite cubic graph: W = 0..n/2-1, B = n/2..n-1."""
    if n < 2 or n % 2:
        raise GraphFormatError("random_bipartite(n) needs an even n >= 2")
    half = n // 2
    if half < 3 and not allow_multi:
        raise GraphFormatError("no simple bipartite cubic graph with fewer than 6 vertices")
    rng = random.Random(seed)
    w_stubs = [v for v in range(half) for _ in range(3)]
    b_stubs = [half + v for v in range(half) for _ in range(3)]
    for _ in range(MAX_PAIRING_ATTEMPTS):
        rng.shuffle(b_stubs)
        pairs = list(zip(w_stubs, b_stubs))
        if _pairing_ok(pairs, False, allow_multi):
            return CubicMultigraph(n, sorted(pairs))
    raise GraphFormatError(f"pairing model failed after {MAX_PAIRING_ATTEMPTS} attempts")


def _subdivide_one_edge(g: CubicMultigraph, e: int, offset: int):
    """Edges of ``g`` (shifted by offset) with edge ``e`` subdivided by a new
    vertex ``offset + g.n``; returns (edges, new vertex)."""
    mid = offset + g.n
    out = []
    for i, (a, b) in enumerate(g.edges):
        if i == e:
            out += [(a + offset, mid), (b + offset, mid)]
        else:
            out.append((a + offset, b + offset))
    return out, mid


def join_by_bridge(g1: CubicMultigraph, e1: int, g2: CubicMultigraph, e2: int) -> CubicMultigraph:
    """Subdivide ``e1`` in g1 and ``e2`` in g2 and join the two new vertices."""
    left, x = _subdivide_one_edge(g1, e1, 0)
    right, y = _subdivide_one_edge(g2, e2, g1.n + 1)
    edges = [edge_key(a, b) for a, b in left + right] + [(x, y)]
    return CubicMultigraph(g1.n + g2.n + 2, edges)


def random_bridged(n: int, seed: int | None = None) -> CubicMultigraph:
    """Random loopless cubic multigraph with at least one bridge (n >= 6)."""
    if n < 6 or n % 2:
        raise GraphFormatError("random_bridged(n) needs an even n >= 6")
    rng = random.Random(seed)
    # the two sides have n1 + n2 = n - 2 vertices, each even and >= 2
    n1 = 2 * rng.randint(1, (n - 2) // 2 - 1)
    n2 = n - 2 - n1
    g1 = random_cubic(n1, rng.randrange(2**32), allow_multi=True)
    g2 = random_cubic(n2, rng.randrange(2**32), allow_multi=True)
    return join_by_bridge(g1, rng.randrange(g1.m), g2, rng.randrange(g2.m))


NAMED: dict[str, tuple[Callable[..., CubicMultigraph], int]] = {
    "theta": (theta, 0),
    "dumbbell": (dumbbell, 0),
    "k4": (k4, 0),
    "k33": (k33, 0),
    "cube": (cube, 0),
    "petersen": (petersen, 0),
    "bridged6": (bridged6, 0),
    "prism": (prism, 1),
    "flower_snark": (flower_snark, 1),
}

RANDOM = {"random": random_cubic, "random_bipartite": random_bipartite, "random_bridged": random_bridged}


def generate(name: str, params=(), seed: int | None = None, *, allow_loops: bool = False,
             allow_multi: bool = False) -> CubicMultigraph:
    """Build a named graph or a seeded random one.

    >>> generate("petersen").m
    15
    """
    params = tuple(int(p) for p in params)
    if name in NAMED:
        fn, arity = NAMED[name]
        if len(params) != arity:
            raise GraphFormatError(f"{name} takes {arity} integer parameter(s), got {len(params)}")
        return fn(*params)
    if name in RANDOM:
        if len(params) != 1:
            raise GraphFormatError(f"{name} takes exactly one parameter n")
        if name == "random":
            return random_cubic(params[0], seed, allow_loops=allow_loops, allow_multi=allow_multi)
        if name == "random_bipartite":
            return random_bipartite(params[0], seed, allow_multi=allow_multi)
        return random_bridged(params[0], seed)
    raise GraphFormatError(f"unknown graph name {name!r}")
