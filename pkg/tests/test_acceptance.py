"""Acceptance suite: one test per criterion.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion
is printed in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time

import networkx as nx
import numpy as np
import pytest

from cubictrails import cli, constructions as cons, generators as gen, ppdc, search, switching, triples
from cubictrails.errors import Falsification, InvalidMarking
from cubictrails.graph import CubicMultigraph, GeneralGraph
from cubictrails.marking import (Marking, are_compatible, count_normal_partitions,
                                 enumerate_markings_with_lengths, enumerate_normal_partitions, from_marking,
                                 make_filter, random_normal_partition, to_marking)
from cubictrails.trails import greedy_normalize_counted, is_normal, random_trail_partition, stats

CRITERIA = [
    ("test_c01_greedy_normalization", "1. greedy normalization on 1000 random multigraphs"),
    ("test_c02_statistics_identity", "2. length statistics identity"),
    ("test_c03_marking_bijection", "3. marking bijection and invalid marking rejection"),
    ("test_c04_switching_equivalence", "4. switching equivalence within 2n moves"),
    ("test_c05_matching_equivalence", "5. matching, odd partition and compatible pair equivalence"),
    ("test_c06_petersen_fixture", "6. Petersen odd triple and empty matching intersection"),
    ("test_c07_loop_characterization", "7. three compatible partitions exactly for loopless graphs"),
    ("test_c08_bipartite_characterization", "8. bipartite length-3 triples"),
    ("test_c09_colored_construction", "9. coloured construction shapes"),
    ("test_c10_bridges_and_edge_structure", "10. bridged graphs and triple edge structure"),
    ("test_c11_prescribed_lengths", "11. prescribed trail lengths on hamiltonian graphs"),
    ("test_c12_triangle_expansion", "12. triangle expansion of the theta triple"),
    ("test_c13_cppdc", "13. CPPDC construction and pendant rejection"),
    ("test_c14_falsification_discipline", "14. falsification exit code and no falsification events"),
]

# every triple produced by the acceptance criteria, checked again in criterion 10
_TRIPLES: list[tuple[CubicMultigraph, triples.CompatibleTriple]] = []

LOOPED4 = CubicMultigraph(4, [(0, 0), (0, 1), (1, 2), (1, 3), (2, 3), (2, 3)])
# a centre joined to three vertices that each carry a loop: no perfect matching
LOOP_CLAW = CubicMultigraph(4, [(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])


def _keep(g, t):
    _TRIPLES.append((g, t))
    return t


# 1 ---------------------------------------------------------------------------------

def test_c01_greedy_normalization():
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randrange(10, 101, 2)
        g = gen.random_cubic(n, seed, allow_loops=True, allow_multi=True)
        start = random_trail_partition(g, seed)
        t0 = time.perf_counter()
        result, steps = greedy_normalize_counted(g, start)
        elapsed = time.perf_counter() - t0
        assert is_normal(g, result), seed
        assert len(result) == n // 2
        assert steps <= len(start)
        assert elapsed < 0.05, f"seed {seed}: {elapsed:.3f} s"


# 2 ---------------------------------------------------------------------------------

def test_c02_statistics_identity():
    checked = 0
    for g in (gen.theta(), gen.k4(), gen.dumbbell()):
        for p in enumerate_normal_partitions(g):
            st = stats(p)
            assert st.balance == 0
            assert sum(i * c for i, c in st.counts.items()) == g.m
            checked += 1
    g = gen.petersen()
    for seed in range(500):
        assert stats(random_normal_partition(g, seed)).balance == 0
    assert checked == 6 + 66 + 1


# 3 ---------------------------------------------------------------------------------

def _brute_force_valid_markings(g):
    """Independent oracle: every choice of one incident edge per vertex whose
    unmarked edges form a forest in the networkx sense."""
    out = []
    for marks in itertools.product(*(sorted(g.incident_edges(v)) for v in range(g.n))):
        h = nx.MultiGraph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges[e] for e in range(g.m) if e not in marks)
        if nx.is_forest(h):
            out.append(Marking(tuple(marks)))
    return out


def test_c03_marking_bijection():
    counts = {}
    for name, g in (("theta", gen.theta()), ("k4", gen.k4()), ("dumbbell", gen.dumbbell())):
        oracle = _brute_force_valid_markings(g)
        seen = set()
        for mk in oracle:
            p = from_marking(g, mk)
            assert is_normal(g, p)
            assert to_marking(g, p) == mk
            assert from_marking(g, to_marking(g, p)) == p
            seen.add(p)
        assert len(seen) == len(oracle) == count_normal_partitions(g)
        counts[name] = len(oracle)
    assert counts["theta"] == 6 and counts["dumbbell"] == 1
    g = gen.petersen()
    for seed in range(100):
        p = random_normal_partition(g, seed)
        assert from_marking(g, to_marking(g, p)) == p
    # K4: vertices a, b, c mark their edge to d, so the triangle abc stays unmarked
    k4 = gen.k4()
    with pytest.raises(InvalidMarking) as info:
        from_marking(k4, Marking((2, 4, 5, 2)))
    assert sorted(info.value.cycle) == [0, 1, 3]


# 4 ---------------------------------------------------------------------------------

def _check_pair(g, a, b, odd_only=False):
    t0 = time.perf_counter()
    trace = switching.switching_sequence(g, a, b, odd_only=odd_only)
    left, right = switching.replay(g, a, b, trace.moves)
    elapsed = time.perf_counter() - t0
    assert left == right == trace.result
    assert len(trace) <= 2 * g.n
    assert elapsed < 1.0
    if odd_only:
        assert trace.result.is_odd


def test_c04_switching_equivalence():
    for g in (gen.theta(), gen.k4()):
        parts = list(enumerate_normal_partitions(g))
        for a in parts:
            for b in parts:
                _check_pair(g, a, b)
    g = gen.petersen()
    rng = random.Random(4)
    for _ in range(200):
        _check_pair(g, random_normal_partition(g, rng), random_normal_partition(g, rng))
    odd = list(enumerate_normal_partitions(g, odd=True))
    for _ in range(200):
        a, b = rng.sample(odd, 2)
        _check_pair(g, a, b, odd_only=True)


# 5 ---------------------------------------------------------------------------------

def _has_compatible_pair(g, markings):
    if not markings:
        return False
    arr = np.array([m.marks for m in markings])
    return any((arr != row).all(axis=1).any() for row in arr)


def test_c05_matching_equivalence():
    graphs = [gen.theta(), gen.k4(), gen.k33(), gen.cube(), gen.petersen(), gen.prism(3), gen.bridged6()]
    assert not search.perfect_matchings(LOOP_CLAW)
    assert count_normal_partitions(LOOP_CLAW, make_filter(odd=True)) == 0
    for g in graphs:
        matchings = search.perfect_matchings(g)
        has_odd = count_normal_partitions(g, make_filter(odd=True)) > 0
        len3 = [mk for mk, lengths in enumerate_markings_with_lengths(g) if max(lengths) <= 3]
        assert bool(matchings) == has_odd == _has_compatible_pair(g, len3)
        for m in matchings:
            orient = search.default_orientation(g, m)
            t1 = cons.odd_partition_from_matching(g, m, orient)
            t2 = cons.odd_partition_from_matching(g, m, orient.reversed())
            assert is_normal(g, t1) and is_normal(g, t2)
            assert set(t1.lengths) == set(t2.lengths) == {3}
            assert are_compatible(g, t1, t2)
            assert cons.matching_from_odd_partition(g, t1) == m
            assert cons.matching_from_odd_partition(g, t2) == m


# 6 ---------------------------------------------------------------------------------

def test_c06_petersen_fixture():
    g = gen.petersen()
    t0 = time.perf_counter()
    found = triples.search_compatible_triple(g, ("odd", "odd", "odd"))
    assert time.perf_counter() - t0 < 60
    assert found.triple is not None
    _keep(g, found.triple)
    ms = triples.fan_raspaud_from_triple(g, found.triple)
    for m in ms:
        assert search.is_perfect_matching(g, m)
    assert not (ms[0] & ms[1] & ms[2])


# 7 ---------------------------------------------------------------------------------

def loopless_corpus():
    out = [gen.theta(), gen.k4(), gen.k33(), gen.prism(3), gen.cube()]
    for n in (2, 4, 6, 8):
        for seed in range(14):
            out.append(gen.random_cubic(n, seed, allow_multi=True))
    return out


def test_c07_loop_characterization():
    corpus = loopless_corpus()
    assert len(corpus) >= 50
    for g in corpus:
        t0 = time.perf_counter()
        t = triples.three_compatible(g)
        assert time.perf_counter() - t0 < 10
        _keep(g, t)
    for g in (gen.dumbbell(), LOOPED4):
        found = triples.search_compatible_triple(g)
        assert found.triple is None


# 8 ---------------------------------------------------------------------------------

def test_c08_bipartite_characterization():
    graphs = [gen.k33(), gen.cube()]
    graphs += [gen.random_bipartite(6 + 2 * (s % 5), s) for s in range(20)]
    for g in graphs:
        t = _keep(g, triples.three_compatible_bipartite(g))
        assert all(set(m.lengths) == {3} for m in t.members)
        rep = triples.analyze_triple(g, t)
        assert rep.ok and set(rep.counts) == {1}
    for g in (gen.k4(), gen.petersen()):
        assert triples.search_compatible_triple(g, ("le3", "le3", "le3")).triple is None


# 9 ---------------------------------------------------------------------------------

def colorable_corpus():
    out = []
    seed = 0
    while len(out) < 20:
        g = gen.random_cubic(6 + 2 * (seed % 5), seed)
        if search.proper_3_edge_coloring(g) is not None:
            out.append(g)
        seed += 1
    return out


def test_c09_colored_construction():
    for g in [gen.k4(), gen.k33(), gen.cube(), gen.prism(3)] + colorable_corpus():
        t = _keep(g, triples.three_compatible_colored(g))
        t1, t2, t3 = t.members
        assert t1.is_odd
        assert set(t2.lengths) == {3}
        assert t3.max_length <= 4
        assert triples.analyze_triple(g, t).ok


# 10 --------------------------------------------------------------------------------

def test_c10_bridges_and_edge_structure():
    assert triples.search_compatible_triple(gen.bridged6(), ("odd", "odd", "odd")).triple is None
    for n in (6, 8, 10):
        g = gen.random_bridged(n, n)
        assert triples.search_compatible_triple(g, ("odd", "odd", "odd")).triple is None
    fresh = [(g, triples.search_compatible_triple(g).triple) for g in (gen.k4(), gen.theta(), gen.k33())]
    fresh += [(g, triples.three_compatible(g)) for g in loopless_corpus()[::3]]
    for g, t in _TRIPLES + fresh:
        rep = triples.analyze_triple(g, t)
        assert rep.ok, rep.violations
        assert set(rep.counts) <= {1, 2} and 1 in rep.counts
        for e, k in rep.singleton_member.items():
            assert any(tr.edges == (e,) for tr in t.members[k - 1].trails)


# 11 --------------------------------------------------------------------------------

def test_c11_prescribed_lengths():
    for g in (gen.k4(), gen.cube(), gen.prism(3)):
        cycle = search.hamiltonian_cycle(g)
        assert cycle is not None
        multisets = cons.admissible_length_multisets(g.n)
        assert multisets
        for lengths in multisets:
            p = cons.partition_with_lengths(g, cycle, lengths)
            assert is_normal(g, p)
            assert p.lengths == sorted(lengths)
    assert search.hamiltonian_cycle(gen.petersen()) is None


# 12 --------------------------------------------------------------------------------

def test_c12_triangle_expansion():
    g = gen.theta()
    t = triples.three_compatible(g)
    for step in range(3):
        g, t = triples.triangle_expand(g, 0, t)
        t.validate(g)
        assert all(m.is_odd for m in t.members)
        assert g.n == 4 + 2 * step
        _keep(g, t)


# 13 --------------------------------------------------------------------------------

def test_c13_cppdc():
    corpus = ppdc.minimal_2ec_corpus(10)
    assert any(g.n == 10 for _, g in corpus)
    for _, g in corpus:
        assert ppdc.verify_cppdc(g, ppdc.cppdc_minimal_2ec(g))
    pendant = 0
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if not 2 <= n <= 5 or not nx.is_connected(h) or min(d for _, d in h.degree()) != 1:
            continue
        g = GeneralGraph(n, tuple(h.edges()))
        covers = list(ppdc.enumerate_ppdcs(g))
        assert covers
        for pc in covers:
            assert ppdc.verify_ppdc(g, pc)
            assert not ppdc.verify_cppdc(g, pc)
        assert ppdc.find_cppdc(g) is None
        pendant += 1
    assert pendant > 0


# 14 --------------------------------------------------------------------------------

def test_c14_falsification_discipline(monkeypatch, capsys):
    from conftest import recorded_falsifications

    assert recorded_falsifications() == []
    # only a Falsification maps to exit code 3
    def boom(ctx):
        raise Falsification("test: deliberate", "raised on purpose")

    monkeypatch.setattr(cli, "cmd_gen", boom)
    assert cli.main(["gen", "theta", "--quiet"]) == 3
    monkeypatch.undo()
    assert cli.main(["gen", "theta", "--quiet"]) == 0
    assert cli.main(["gen", "nonexistent", "--quiet"]) == 2
    capsys.readouterr()
    # claim-checking paths on a spread of inputs raise nothing
    g = gen.petersen()
    odd = list(enumerate_normal_partitions(g, odd=True))[:40]
    for t in odd:
        for v in range(g.n):
            switching.odd_switch(g, t, v)
    assert recorded_falsifications() == []


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
