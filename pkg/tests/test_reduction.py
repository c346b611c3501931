import pytest

from oracles import all_finals
from reidemine import canonicalize, corpus, isomorphic
from reidemine.mapcore import LoopRecord, build_diagram
from reidemine.moves import REDUCING, Kind, apply, detect_sites
from reidemine.reduction import (Deterministic, Seeded, TooLarge,
                                 confluence_check, connected_sum,
                                 exhaustive_confluence, is_minimal, reduce,
                                 reducing_sites)


def _finals(d):
    return all_finals(d, apply, lambda x: detect_sites(x, REDUCING))


@pytest.fixture
def kinked_trefoil(trefoil):
    return apply(trefoil, detect_sites(trefoil, {Kind.RI_PLUS})[5])


def test_is_minimal(trefoil, kinked_trefoil):
    assert is_minimal(build_diagram([], [], [LoopRecord(0)]))
    assert is_minimal(trefoil)
    assert not is_minimal(kinked_trefoil)
    for d in corpus.knots().values():
        assert is_minimal(d)


def test_reduce_kink(kink):
    tr = reduce(kink)
    assert len(tr.steps) == 1 and tr.steps[0][0] is Kind.RI_MINUS
    assert tr.final.n == 0 and len(tr.final.loops) == 1


def test_reduce_kinked_trefoil(trefoil, kinked_trefoil):
    tr = reduce(kinked_trefoil)
    assert tr.final.n == 3
    assert canonicalize(tr.final) == canonicalize(trefoil)
    assert all(isomorphic(f, trefoil) for f in _finals(kinked_trefoil))


def test_double_poke_unlinks():
    d = corpus.double_poke()
    finals = _finals(d)
    assert finals
    assert all(f.n == 0 and len(f.loops) == 2 for f in finals)
    tr = reduce(d)
    assert tr.final.n == 0 and len(tr.final.loops) == 2


def test_deterministic_order():
    d = corpus.double_poke()
    d = apply(d, detect_sites(d, {Kind.RI_PLUS})[0])
    sites = reducing_sites(d)
    kinds = [s.kind for s in sites]
    assert kinds == sorted(kinds, key=lambda k: k is Kind.RI_MINUS)
    assert reduce(d).steps[0][0] is Kind.RII_MINUS


def test_trace_properties(padded):
    for d in list(padded.values())[:40]:
        for strat in (Deterministic(), Seeded(1), Seeded(99)):
            tr = reduce(d, strat)
            assert len(tr.steps) <= d.n
            assert is_minimal(tr.final)
            assert reduce(tr.final).steps == ()
            assert reduce(d, strat) == tr


def test_seeded_runs_reproduce(clasped):
    d = clasped["3_1+clasp"]
    a = [reduce(d, Seeded(s)).steps for s in range(10)]
    b = [reduce(d, Seeded(s)).steps for s in range(10)]
    assert a == b


def test_confluence_kinked_trefoil(kinked_trefoil):
    rep = confluence_check(kinked_trefoil, 50, 0)
    assert len(rep.distinct_canonical_codes) == 1
    assert rep.distinct_crossing_counts == {3}
    assert rep.loop_flag is False


def test_clasp_has_two_finals(clasped):
    d = clasped["3_1+clasp"]
    ex = exhaustive_confluence(d)
    assert len(ex.distinct_canonical_codes) == 2
    assert ex.distinct_crossing_counts == {3}
    assert ex.loop_flag
    oracle = {canonicalize(f) for f in _finals(d)}
    assert oracle == ex.distinct_canonical_codes


def test_minimal_is_its_own_final(knots):
    for d in knots.values():
        rep = confluence_check(d, 10, 0)
        assert rep.distinct_canonical_codes == {canonicalize(d)}


def test_exhaustive_matches_unmemoized_oracle(padded, clasped):
    pool = [d for d in padded.values() if d.n <= 8][:25] + list(clasped.values())
    for d in pool:
        ex = exhaustive_confluence(d)
        assert ex.distinct_canonical_codes == {canonicalize(f) for f in _finals(d)}


def test_sampled_finals_within_exhaustive(padded, clasped):
    for d in list(padded.values())[::5] + list(clasped.values()):
        ex = exhaustive_confluence(d)
        s = confluence_check(d, 8, 3)
        assert s.distinct_canonical_codes <= ex.distinct_canonical_codes


def test_guard():
    d = corpus.pad(corpus.knot("7_1"), 3, 0)
    assert d.n >= 11
    with pytest.raises(TooLarge):
        exhaustive_confluence(d)
    assert exhaustive_confluence(d, guard=d.n).distinct_crossing_counts == {7}


def test_connected_sum_minimal(trefoil):
    u, _ = corpus.minimal_unknot()
    s = connected_sum(trefoil, u)
    assert s.n == 3 + u.n and is_minimal(s)
    assert not isomorphic(s, trefoil)


def test_connected_sum_of_knots(trefoil):
    f8 = corpus.knot("4_1")
    s = connected_sum(trefoil, f8, 0, 0)
    assert s.n == 7 and is_minimal(s)
    assert len(s.face_darts) == 9
