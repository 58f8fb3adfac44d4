import pytest
from hypothesis import given, settings, strategies as st

from cubictrails import generators as gen
from cubictrails.errors import ConstructionError, PartitionError
from cubictrails.marking import markings_compatible
from cubictrails.reductions import (edge_reduction, find_parallel_pair, find_simple_edge, lift_options,
                                    lift_triple, parallel_pair_reduction)
from cubictrails.search import perfect_matchings, proper_3_edge_coloring
from cubictrails.trails import is_normal
from cubictrails.triples import (CompatibleTriple, analyze_triple, fan_raspaud_from_triple, parse_shape,
                                 search_compatible_triple, three_compatible, three_compatible_bipartite,
                                 three_compatible_colored, triangle_expand)


def _pairwise(marks):
    return all(markings_compatible(marks[i], marks[j]) for i in range(3) for j in range(i + 1, 3))


def test_parallel_pair_reduction_shape():
    g = gen.generate("prism", [3])
    assert find_parallel_pair(g) is None
    g = gen.random_cubic(8, 4, allow_multi=True)
    found = find_parallel_pair(g)
    if found is not None:
        red = parallel_pair_reduction(g, *found)
        assert red.small.n == g.n - 2 and red.small.m == g.m - 3


def test_edge_reduction_and_lift_on_k4():
    g = gen.k4()
    e = find_simple_edge(g)
    assert e == 0
    red = edge_reduction(g, e)
    assert (red.small.n, red.small.m) == (2, 3)
    small = three_compatible(red.small).markings(red.small)
    for mk in small:
        for key, opt in lift_options(red, mk).items():
            assert opt.marking[red.u] == key[0] and is_normal(g, opt.partition)
    lifted = lift_triple(red, small, permute=True)
    assert lifted is not None and _pairwise(lifted[0])


@pytest.mark.parametrize("name", ["theta", "k4", "k33", "cube", "petersen", "bridged6", "flower_snark3"])
def test_three_compatible_named(name):
    g = gen.flower_snark(3) if name == "flower_snark3" else gen.generate(name)
    log = []
    triple = three_compatible(g, log=log)
    triple.validate(g)
    assert log and analyze_triple(g, triple).ok


@given(st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_three_compatible_random(half, seed):
    g = gen.random_cubic(2 * half, seed, allow_loops=False, allow_multi=half == 1 or seed % 2 == 0)
    triple = three_compatible(g)
    assert all(is_normal(g, t) for t in triple.members)
    assert analyze_triple(g, triple).ok


def test_loops_are_rejected():
    with pytest.raises(ConstructionError):
        three_compatible(gen.dumbbell())
    found = search_compatible_triple(gen.dumbbell())
    assert found.triple is None and "loop" in found.reason


@pytest.mark.parametrize("name", ["k4", "k33", "cube"])
def test_colored_and_bipartite(name):
    g = gen.generate(name)
    c = proper_3_edge_coloring(g)
    t = three_compatible_colored(g, c)
    assert t.t1.is_odd and t.t2.max_length == 3 and t.t3.max_length <= 4
    if name != "k4":
        b = three_compatible_bipartite(g, c)
        assert all(m.max_length == 3 and m.is_odd for m in b.members)
    else:
        with pytest.raises(ConstructionError):
            three_compatible_bipartite(g)
    with pytest.raises(ConstructionError):
        three_compatible_colored(gen.petersen())


def test_validate_rejects_incompatible():
    g = gen.k4()
    t = three_compatible(g)
    with pytest.raises(PartitionError):
        CompatibleTriple(t.t1, t.t1, t.t2).validate(g)


def test_search_counts():
    assert search_compatible_triple(gen.k4(), count=True).count == 118
    pet = search_compatible_triple(gen.petersen(), ("odd-le3",) * 3)
    assert pet.triple is None and pet.reason
    k33 = search_compatible_triple(gen.k33(), ("odd-le3",) * 3)
    assert k33.triple is not None


def test_parse_shape():
    assert parse_shape("any") is None
    f = parse_shape("odd-le3")
    assert f((1, 3)) and not f((1, 5)) and not f((4,))
    assert parse_shape("le4")((4, 1)) and parse_shape("odd")((5,))
    with pytest.raises(ValueError):
        parse_shape("even")


def test_triangle_expand_repeatedly():
    g = gen.theta()
    t = search_compatible_triple(g, ("odd",) * 3).triple
    for _ in range(3):
        g, t = triangle_expand(g, 0, t)
        assert all(m.is_odd for m in t.members)
    assert g.n == 8
    k = gen.k4()
    with pytest.raises(ConstructionError):
        triangle_expand(k, 0, search_compatible_triple(k).triple)  # has an even member


def test_fan_raspaud():
    g = gen.petersen()
    t = search_compatible_triple(g, ("odd",) * 3).triple
    ms = fan_raspaud_from_triple(g, t)
    assert not (ms[0] & ms[1] & ms[2])
    assert all(m in set(perfect_matchings(g)) for m in ms)
    theta = gen.theta()
    ms = fan_raspaud_from_triple(theta, search_compatible_triple(theta, ("odd",) * 3).triple)
    assert len(set(ms)) == 3
