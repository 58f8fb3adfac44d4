import itertools

import networkx as nx
import pytest
from hypothesis import assume, given, settings, strategies as st

from cubictrails import generators as gen
from cubictrails.errors import GraphFormatError
from cubictrails.graph import (CubicMultigraph, GeneralGraph, find_bridges, girth, parse_edge_list,
                               parse_general_graph, parse_graph6, structure_report, to_graph6)
from cubictrails.search import (hamiltonian_cycle, hamiltonian_path, is_perfect_matching, perfect_matchings,
                                proper_3_edge_coloring)


def test_parse_theta_and_dumbbell():
    g = parse_edge_list("2 3\n0 1\n0 1\n0 1\n")
    assert (g.n, g.m) == (2, 3)
    assert g.edges_between(0, 1) == [0, 1, 2]
    d = parse_edge_list("# dumbbell\n2 3\n0 0\n0 1  # bridge\n1 1\n")
    assert d.is_loop(0) and d.is_loop(2) and not d.is_loop(1)
    assert d.incident_edges(0) == (0, 1)


@pytest.mark.parametrize("text", [
    "4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n",      # degree 2 vertices
    "3 3\n0 1\n1 2\n2 0\n",                 # odd n and degree 2
    "2 3\n0 1\n0 1\n",                      # fewer lines than announced
    "2 3\n0 1\n0 1\n0 x\n",                 # not an integer
    "2 3\n0 1\n0 1\n0 2\n",                 # out of range
    "",
])
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        parse_edge_list(text)


def test_darts_distinguish_parallel_edges_and_loops():
    g = gen.theta()
    assert len(g.darts_at(0)) == 3
    d = gen.dumbbell()
    assert sorted(d.darts_at(0)) == [(0, 0), (0, 1), (1, 0)]
    assert d.dart_of(0, 0).side == 0


@given(st.integers(1, 12), st.integers(0, 10**6), st.booleans(), st.booleans())
@settings(max_examples=60, deadline=None)
def test_edge_list_roundtrip(half, seed, loops, multi):
    assume(half >= 2 or multi)
    g = gen.random_cubic(2 * half, seed, allow_loops=loops, allow_multi=multi)
    assert parse_edge_list(g.to_text()) == g
    assert all(len(g.darts_at(v)) == 3 for v in range(g.n))


def test_named_graphs():
    p = gen.petersen()
    assert (p.n, p.m, girth(p)) == (10, 15, 5)
    assert gen.generate("petersen") == p
    assert (gen.k4().n, gen.cube().n, gen.prism(4).n, gen.flower_snark(5).n) == (4, 8, 8, 20)
    with pytest.raises(GraphFormatError):
        gen.flower_snark(4)
    with pytest.raises(GraphFormatError):
        gen.generate("nonsense")
    with pytest.raises(GraphFormatError):
        gen.generate("prism", ())


def test_random_generators_are_seeded():
    assert gen.generate("random", [12], seed=3) == gen.generate("random", [12], seed=3)
    b = gen.random_bipartite(10, 1)
    assert structure_report(b).is_bipartite
    r = gen.random_bridged(10, 2)
    assert structure_report(r).bridges


def test_structure_reports():
    t = structure_report(gen.theta())
    assert (t.has_loop, t.has_parallel, t.is_2_edge_connected, t.is_bipartite) == (False, True, True, True)
    d = structure_report(gen.dumbbell())
    assert d.has_loop and d.bridges == (1,)
    p = structure_report(gen.petersen())
    assert not p.has_loop and not p.has_parallel and p.is_2_edge_connected and not p.is_bipartite
    k = structure_report(gen.k33())
    assert k.bipartition == ((0, 1, 2), (3, 4, 5))
    assert structure_report(gen.bridged6()).bridges == (8,)


@given(st.integers(4, 14), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_bridges_match_networkx(n, seed):
    h = nx.gnm_random_graph(n, n + 2, seed=seed)
    edges = list(h.edges())
    ours = {tuple(sorted(edges[e])) for e in find_bridges(n, edges)}
    theirs = {tuple(sorted(e)) for e in nx.bridges(h)}
    assert ours == theirs


def test_graph6_roundtrip():
    for g in (gen.k4(), gen.petersen(), gen.cube()):
        again = parse_graph6(to_graph6(g))
        assert sorted(again.edges) == sorted(g.edges)
    with pytest.raises(GraphFormatError):
        to_graph6(gen.theta())


def test_general_graph():
    g = parse_general_graph("3 3\n0 1\n1 2\n2 0\n")
    assert g.edges == ((0, 1), (1, 2), (0, 2)) and g.degree(0) == 2
    with pytest.raises(GraphFormatError):
        GeneralGraph(2, ((0, 1), (1, 0)))
    with pytest.raises(GraphFormatError):
        GeneralGraph(2, ((0, 0),))


def _brute_matchings(g):
    out = set()
    for subset in itertools.combinations(range(g.m), g.n // 2):
        if is_perfect_matching(g, subset):
            out.add(frozenset(subset))
    return out


@pytest.mark.parametrize("n,seed", [(n, s) for n in (2, 4, 6, 8, 10, 12) for s in range(3)])
def test_perfect_matchings_against_brute_force(n, seed):
    g = gen.random_cubic(n, seed, allow_loops=True, allow_multi=True)
    assert set(perfect_matchings(g)) == _brute_matchings(g)


def test_perfect_matching_examples():
    assert len(perfect_matchings(gen.theta())) == 3
    assert len(perfect_matchings(gen.petersen())) == 6
    assert perfect_matchings(gen.dumbbell()) == [frozenset({1})]
    assert len(perfect_matchings(gen.petersen(), limit=2)) == 2


def test_edge_colorings():
    for g in (gen.k4(), gen.k33(), gen.cube(), gen.prism(3)):
        c = proper_3_edge_coloring(g)
        assert c is not None and c.is_proper(g)
    for g in (gen.petersen(), gen.flower_snark(5), gen.dumbbell()):
        assert proper_3_edge_coloring(g) is None


def test_hamiltonicity():
    assert hamiltonian_cycle(gen.petersen()) is None
    path = hamiltonian_path(gen.petersen())
    assert path is not None and len(set(path.vertices)) == 10
    cyc = hamiltonian_cycle(gen.cube())
    assert cyc.is_closed and cyc.length == 8 and cyc.is_valid(gen.cube())


def test_networkx_view():
    h = gen.theta().to_networkx()
    assert h.number_of_edges() == 3
    assert isinstance(gen.k4(), CubicMultigraph)
