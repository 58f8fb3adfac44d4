import networkx as nx
import pytest

from cubictrails import generators as gen
from cubictrails.errors import ConstructionError, DocumentError
from cubictrails.graph import GeneralGraph
from cubictrails.ppdc import (PathCollection, all_paths, cppdc_minimal_2ec, cycle_graph, enumerate_ppdcs,
                              find_cppdc, is_minimal_2ec, minimal_2ec_corpus, random_cactus, subdivided_theta,
                              verify_cppdc, verify_ppdc)
from cubictrails.triples import three_compatible_bipartite

K3 = cycle_graph(3)


def test_base_triangle():
    pc = cppdc_minimal_2ec(K3)
    assert pc == PathCollection(((0, 1, 2), (0, 2, 1), (1, 0, 2))).canonical()
    assert verify_cppdc(K3, pc)


@pytest.mark.parametrize("g", [cycle_graph(5), subdivided_theta([2, 2, 3]), subdivided_theta([2, 3, 3, 4]),
                               random_cactus(9, 1)])
def test_construction_verifies(g):
    assert is_minimal_2ec(g)
    pc = cppdc_minimal_2ec(g)
    assert verify_cppdc(g, pc) and len(pc) == g.n
    assert PathCollection.from_text(pc.to_text()) == pc


def test_minimality():
    k4 = GeneralGraph(4, tuple(nx.complete_graph(4).edges()))
    assert is_minimal_2ec(cycle_graph(6))
    assert is_minimal_2ec(subdivided_theta([2, 2, 2]))
    assert not is_minimal_2ec(k4)
    assert not is_minimal_2ec(GeneralGraph(3, ((0, 1), (1, 2))))
    with pytest.raises(ConstructionError):
        cppdc_minimal_2ec(k4)
    with pytest.raises(ConstructionError):
        subdivided_theta([0, 2])


def test_verifier_witnesses():
    c4 = cycle_graph(4)
    missing = PathCollection(((0, 1, 2), (1, 2, 3)))
    v = verify_ppdc(c4, missing)
    assert not v and "covered" in v.reason
    bad_edge = PathCollection(((0, 2),))
    assert verify_ppdc(c4, bad_edge).witness == 0
    # a valid double cover whose two ends at vertex 0 both use edge 0-2
    theta = subdivided_theta([2, 2, 2])
    shared = PathCollection(((0, 2), (0, 2, 1), (1, 3, 0, 4), (2, 1, 4, 0, 3), (3, 1, 4)))
    assert verify_ppdc(theta, shared)
    v = verify_cppdc(theta, shared)
    assert not v and v.witness == 0
    edgeless = PathCollection(((0, 1, 2), (0, 3, 2, 1), (1, 0, 3, 2), (3,)))
    assert verify_ppdc(c4, edgeless)
    v = verify_cppdc(c4, edgeless)
    assert not v and v.witness == 3


def test_path_text_errors():
    with pytest.raises(DocumentError):
        PathCollection.from_text("0 1 x\n")
    assert PathCollection.from_text("# c\n0 1\n\n1 2\n").paths == ((0, 1), (1, 2))


def test_all_paths_and_enumeration():
    assert all_paths(K3, edgeless=False) == [(0, 1), (0, 1, 2), (0, 2), (0, 2, 1), (1, 0, 2), (1, 2)]
    covers = list(enumerate_ppdcs(K3))
    assert len({c.canonical() for c in covers}) == len(covers)
    assert all(verify_ppdc(K3, c) for c in covers)
    compat = list(enumerate_ppdcs(K3, compatible=True))
    assert compat and all(verify_cppdc(K3, c) for c in compat)


def test_pendant_graph_has_no_cppdc():
    p3 = GeneralGraph(3, ((0, 1), (1, 2)))
    assert list(enumerate_ppdcs(p3))
    assert find_cppdc(p3) is None


@pytest.mark.parametrize("name", ["k33", "cube"])
def test_bipartite_pairs_merge_into_cppdc(name):
    g = gen.generate(name)
    triple = three_compatible_bipartite(g)
    simple = GeneralGraph(g.n, g.edges)
    for i in range(3):
        for j in range(i + 1, 3):
            paths = [t.vertices for m in (triple.members[i], triple.members[j]) for t in m.trails]
            assert verify_cppdc(simple, PathCollection(tuple(paths)))


def test_corpus():
    corpus = minimal_2ec_corpus(8)
    assert len(corpus) >= 40
    assert all(is_minimal_2ec(g) and 3 <= g.n <= 8 for _, g in corpus)


def _random_2ec(n, seed):
    for extra in range(n + 6):
        h = nx.gnm_random_graph(n, n + 1 + extra % 4, seed=seed * 31 + extra)
        if nx.is_connected(h) and nx.is_k_edge_connected(h, 2):
            return GeneralGraph(n, tuple(h.edges()))
    return None


@pytest.mark.parametrize("seed", range(12))
def test_open_question_probe_on_small_2ec_graphs(seed):
    # the general 2-edge-connected case is open; report absence but never fail on it
    n = 4 + seed % 5
    g = _random_2ec(n, seed)
    if g is None:
        pytest.skip("no 2-edge-connected sample for this seed")
    found = find_cppdc(g)
    if found is None:
        print(f"no CPPDC on n={n} edges={g.edges}")
    else:
        assert verify_cppdc(g, found)
