import random

import pytest
from hypothesis import given, settings, strategies as st

from cubictrails import generators as gen
from cubictrails.errors import DocumentError, GuardExceeded, InvalidMarking, PartitionError
from cubictrails.marking import (Marking, are_compatible, count_normal_partitions, enumerate_markings,
                                 enumerate_normal_partitions, find_unmarked_cycle, from_marking,
                                 is_valid_marking, make_filter, random_normal_partition, to_marking)
from cubictrails.trails import is_normal


@pytest.mark.parametrize("name,count", [
    ("theta", 6), ("k4", 66), ("dumbbell", 1), ("k33", 642), ("cube", 5928), ("bridged6", 484),
])
def test_normal_partition_counts(name, count):
    assert count_normal_partitions(gen.generate(name)) == count


def test_odd_counts():
    assert count_normal_partitions(gen.k4(), make_filter(odd=True)) == 42
    assert count_normal_partitions(gen.petersen(), make_filter(odd=True)) == 6024


def test_filters_agree_with_partitions():
    g = gen.k33()
    parts = list(enumerate_normal_partitions(g, odd=True, max_length=3))
    assert parts and all(p.is_odd and max(t.length for t in p.trails) <= 3 for p in parts)
    assert len(parts) == 12


@pytest.mark.parametrize("name", ["theta", "k4", "dumbbell", "k33", "cube"])
def test_enumeration_is_a_bijection(name):
    g = gen.generate(name)
    marks = list(enumerate_markings(g))
    assert len(set(marks)) == len(marks)
    for mk in marks:
        p = from_marking(g, mk)
        assert is_normal(g, p)
        assert to_marking(g, p) == mk


@given(st.integers(1, 25), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_roundtrip_on_random_graphs(half, seed):
    g = gen.random_cubic(2 * half, seed, allow_loops=True, allow_multi=True)
    p = random_normal_partition(g, seed)
    mk = to_marking(g, p)
    assert is_valid_marking(g, mk)
    assert from_marking(g, mk) == p


def test_marking_text_roundtrip():
    g = gen.dumbbell()
    mk = to_marking(g, random_normal_partition(g, 1))
    assert Marking.from_text(g, mk.to_text(g)) == mk
    with pytest.raises(DocumentError):
        Marking.from_text(g, "0: 0 0\n")
    with pytest.raises(DocumentError):
        Marking.from_text(g, "0: 2 0\n1: 2 0\n")


def test_invalid_marking_reports_cycle():
    g = gen.k4()
    mk = Marking((2, 4, 5, 2))
    assert sorted(find_unmarked_cycle(g, mk)) == [0, 1, 3]
    assert not is_valid_marking(g, mk)
    with pytest.raises(InvalidMarking) as info:
        from_marking(g, mk)
    assert sorted(info.value.cycle) == [0, 1, 3]
    with pytest.raises(PartitionError):
        from_marking(g, Marking((5, 4, 5, 2)))


def test_guard():
    with pytest.raises(GuardExceeded):
        next(enumerate_markings(gen.flower_snark(5)))
    assert count_normal_partitions(gen.theta(), guard_n=None) == 6


def test_compatibility():
    g = gen.theta()
    parts = list(enumerate_normal_partitions(g))
    pairs = [(a, b) for a in parts for b in parts if are_compatible(g, a, b)]
    # the three edges are marked at 0 and 1 by distinct pairs in compatible partitions
    assert pairs and all(a != b for a, b in pairs)
    verdict = are_compatible(g, parts[0], parts[0])
    assert not verdict and verdict.witness == 0


def test_random_normal_partition_is_seeded():
    g = gen.petersen()
    assert random_normal_partition(g, 7) == random_normal_partition(g, random.Random(7))
