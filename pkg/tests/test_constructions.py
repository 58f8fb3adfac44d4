import pytest

from cubictrails import generators as gen
from cubictrails.constructions import (admissible_length_multisets, check_lengths, extract_hamiltonian_path,
                                       matching_from_odd_partition, odd_partition_from_matching,
                                       partition_from_hamiltonian_path, partition_from_perfect_path_partition,
                                       partition_from_transversal, partition_with_lengths)
from cubictrails.errors import ConstructionError, PartitionError
from cubictrails.marking import are_compatible, enumerate_markings, from_marking
from cubictrails.search import default_orientation, hamiltonian_cycle, hamiltonian_path, perfect_matchings
from cubictrails.trails import is_normal, stats


@pytest.mark.parametrize("name", ["theta", "k4", "k33", "cube", "petersen", "dumbbell", "bridged6"])
def test_matching_roundtrip(name):
    g = gen.generate(name)
    for m in perfect_matchings(g):
        p = odd_partition_from_matching(g, m)
        assert is_normal(g, p) and p.is_odd and stats(p).counts == {3: g.n // 2}
        assert matching_from_odd_partition(g, p) == m


def test_reversed_orientation_gives_compatible_twin():
    g = gen.petersen()
    m = perfect_matchings(g)[0]
    o = default_orientation(g, m)
    a = odd_partition_from_matching(g, m, o)
    b = odd_partition_from_matching(g, m, o.reversed())
    assert are_compatible(g, a, b)


def test_matching_errors():
    g = gen.k4()
    with pytest.raises(ConstructionError):
        odd_partition_from_matching(g, [0, 1])
    even = next(p for p in map(lambda mk: from_marking(g, mk), enumerate_markings(g)) if not p.is_odd)
    with pytest.raises(PartitionError):
        matching_from_odd_partition(g, even)


@pytest.mark.parametrize("name", ["k4", "cube", "petersen", "k33"])
def test_hamiltonian_path_construction(name):
    g = gen.generate(name)
    path = hamiltonian_path(g)
    p = partition_from_hamiltonian_path(g, path)
    assert is_normal(g, p) and p.max_length == g.n + 1
    assert extract_hamiltonian_path(g, p).vertices in (path.vertices, path.vertices[::-1])


def test_hamiltonian_path_errors():
    g = gen.k4()
    with pytest.raises(ConstructionError):
        partition_from_hamiltonian_path(g, [0, 1, 2])
    p = odd_partition_from_matching(g, perfect_matchings(g)[0])
    with pytest.raises(ConstructionError):
        extract_hamiltonian_path(g, p)


def test_perfect_path_partition():
    g = gen.cube()
    cyc = hamiltonian_cycle(g)
    paths = [cyc.sub(0, 2), cyc.sub(3, 5), cyc.sub(6, 7)]
    for flip in ((), (0,)):
        p = partition_from_perfect_path_partition(g, paths, flip=flip)
        assert is_normal(g, p)
    with pytest.raises(ConstructionError):
        partition_from_perfect_path_partition(g, [cyc.sub(0, 2), cyc.sub(3, 5), cyc.sub(6, 6), cyc.sub(7, 7)])
    with pytest.raises(ConstructionError):
        partition_from_perfect_path_partition(g, [cyc.sub(0, 2)])


def test_length_checks():
    g = gen.cube()
    for bad in ([3, 3, 3], [2, 4, 3, 3], [1, 1, 1, 1]):
        with pytest.raises(ConstructionError):
            check_lengths(g, bad)


@pytest.mark.parametrize("n,count", [(2, 1), (4, 2), (6, 4), (8, 7), (10, 12)])
def test_admissible_multisets(n, count):
    sets = admissible_length_multisets(n)
    assert len(sets) == count
    assert all(sum(s) == 3 * n // 2 and 2 not in s for s in sets)


@pytest.mark.parametrize("name", ["k4", "k33", "cube", "prism4"])
def test_every_admissible_length_profile(name):
    g = gen.generate("prism", [4]) if name == "prism4" else gen.generate(name)
    cyc = hamiltonian_cycle(g)
    for lengths in admissible_length_multisets(g.n):
        p = partition_with_lengths(g, cyc, lengths)
        assert is_normal(g, p)
        assert sorted(t.length for t in p.trails) == list(lengths)


def test_transversal_matches_from_marking():
    g = gen.k33()
    for mk in list(enumerate_markings(g))[:50]:
        assert partition_from_transversal(g, mk) == from_marking(g, mk)
