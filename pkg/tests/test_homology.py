import csv
import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from khbounds.algebra import QQ, PrimeField
from khbounds.corpus import corpus_knot, load_corpus
from khbounds.diagram import NotAKnotError, diagram_report, mirror, parse_pd, torus_knot
from khbounds.homology import (HomologyTable, InvariantFailure, bound_report,
                               f2_splitting, f2_splitting_check, kh_table,
                               report_json, s_invariant, spectral_pages, torsion_profile)

F2, F3 = PrimeField(2), PrimeField(3)
CORPUS = load_corpus()
SMALL = [e for e in CORPUS if e.diagram().c <= 8]


@pytest.mark.parametrize("e", SMALL, ids=lambda e: e.name)
def test_tables_match_knotinfo(e):
    d = e.diagram()
    assert kh_table(d, QQ).ranks == {k: v for k, v in e.kh_ranks(0).items() if v}
    assert kh_table(d, F2).ranks == {k: v for k, v in e.kh_ranks(2).items() if v}


def test_trefoil_table_and_queries():
    t = kh_table(corpus_knot("3_1"), QQ)
    assert t.ranks == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
    assert t.total == 4 and t.width == 2 and t.thin
    assert t.odd_quantum()
    assert t.mirrored().ranks == {(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -9): 1}
    assert t.euler() == {1: 1, 3: 1, 5: 1, 9: -1}


def test_unknot_table():
    t = kh_table(parse_pd("PD[]"), F3)
    assert t.ranks == {(0, 1): 1, (0, -1): 1}
    assert t.width == 2 and t.thin


def test_links_rejected_for_knot_invariants():
    hopf = parse_pd("PD[X(4,1,3,2),X(2,3,1,4)]")
    with pytest.raises(NotAKnotError):
        torsion_profile(hopf, QQ)
    with pytest.raises(NotAKnotError):
        s_invariant(hopf)


# torsion and pages; the page values come from the cube filtration,
# the torsion values from Smith normal forms over the scan complex

@pytest.mark.parametrize("name,ring,prof", [
    ("3_1", QQ, {"uX": 1, "ut": 1, "uh": None, "pg": 2}),
    ("3_1", F2, {"uX": None, "ut": None, "uh": 1, "pg": 2}),
    ("4_1", F3, {"uX": 1, "ut": 1, "uh": None, "pg": 2}),
    ("8_19", QQ, {"uX": 2, "ut": 1, "uh": None, "pg": 2}),
    ("8_19", F2, {"uX": None, "ut": None, "uh": 2, "pg": 3}),
])
def test_torsion_profiles(name, ring, prof):
    d = corpus_knot(name)
    p = torsion_profile(d, ring)
    assert p.to_dict() == prof
    assert p.free == {0: 2}
    assert spectral_pages(d, ring).collapse == p.pg


def test_unknot_torsion():
    p = torsion_profile(parse_pd("PD[]"), QQ)
    assert p.u_X == 0 and p.pg == 1
    assert spectral_pages(parse_pd("PD[]"), QQ).collapse == 1


def test_wrong_deformation_for_ring():
    with pytest.raises(ValueError):
        torsion_profile(corpus_knot("3_1"), F2, deformation="lee")
    with pytest.raises(ValueError):
        torsion_profile(corpus_knot("3_1"), QQ, deformation="barnatan")


def test_pages_start_at_khovanov():
    d = corpus_knot("5_1")
    sp = spectral_pages(d, QQ)
    assert sp.pages[0] == kh_table(d, QQ, route="cube").ranks
    assert sum(sp.infinity.values()) == 2


@pytest.mark.parametrize("e", [e for e in CORPUS if e.rasmussen is not None and e.diagram().c <= 8],
                         ids=lambda e: e.name)
def test_s_matches_knotinfo(e):
    assert s_invariant(e.diagram()) == e.rasmussen


def test_s_examples():
    assert s_invariant(parse_pd("PD[]")) == 0
    assert s_invariant(torus_knot(2, 3)) == 2
    assert s_invariant(mirror(torus_knot(2, 3))) == -2
    assert s_invariant(torus_knot(2, 3), F2) == 2


# bounds

def test_bound_report_8_19():
    doc = bound_report(corpus_knot("8_19"), ("Q", "F2")).to_dict()
    assert doc["pg"] == {"Lee/Q": 2, "BN/F2": 3}
    assert doc["bounds"] == {"alt_lb": 1, "dthin_lb": {"Q": 0, "F2": 1},
                             "turaev_lb": 1, "unknotting_lb": 1}
    assert doc["rules"]["dthin_lb"] == {"Q": "trivial", "F2": "pg_BN - 2"}


@pytest.mark.parametrize("name", ["3_1", "5_2", "7_4"])
def test_alternating_bounds_are_trivial(name):
    b = bound_report(corpus_knot(name), ("Q", "F3", "F2"))
    assert b.alt_lb.value == 0 and b.turaev_lb.value == 0
    assert b.unknotting_lb.value == 0


def test_bounds_respect_turaev_genus():
    for name in ("8_19", "8_20", "9_42"):
        d = corpus_knot(name)
        b = bound_report(d, ("Q", "F2"))
        assert b.turaev_lb.value <= diagram_report(d).g_T_diagram


# F2 splitting

@pytest.mark.parametrize("e", CORPUS, ids=lambda e: e.name)
def test_f2_splitting_corpus(e):
    t = HomologyTable("F2", e.kh_ranks(2), e.name)
    r = f2_splitting(t)
    assert r is not None
    assert sum(r.values()) * 2 == t.total


def test_f2_splitting_negative_control():
    t = kh_table(corpus_knot("3_1"), F2)
    bad = dict(t.ranks)
    bad[(0, 1)] += 1
    assert not f2_splitting_check(HomologyTable("F2", bad))
    assert not f2_splitting_check(HomologyTable("F2", {(0, 1): 1}))


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-6, 6)), st.integers(1, 3),
                       max_size=6))
@settings(max_examples=200, deadline=None)
def test_f2_splitting_of_doubled_tables(reduced):
    # any table of the form r(j-1) + r(j+1) splits, and the split is unique
    full = {}
    for (i, j), v in reduced.items():
        for s in (1, -1):
            full[(i, j + s)] = full.get((i, j + s), 0) + v
    assert f2_splitting(HomologyTable("F2", full)) == reduced


# output formats

def test_csv_and_grid():
    t = kh_table(corpus_knot("3_1"), QQ)
    rows = list(csv.reader(io.StringIO(t.to_csv())))
    assert rows[0] == ["i", "j", "rank"]
    assert rows[1:] == [["0", "1", "1"], ["0", "3", "1"], ["2", "5", "1"], ["3", "9", "1"]]
    grid = t.to_grid().splitlines()
    assert grid[0].split() == ["j\\i", "0", "1", "2", "3"]
    assert grid[1].split() == ["9", "1"]
    assert HomologyTable("Q", {}).to_grid() == "(zero)\n"


def test_json_roundtrip():
    d = corpus_knot("8_19")
    t = kh_table(d, QQ)
    p = torsion_profile(d, QQ)
    b = bound_report(d, ("Q",))
    doc = json.loads(report_json(t, p, b))
    assert doc["knot"] == "8_19" and doc["ring"] == "Q"
    assert {(r["i"], r["j"]): r["rank"] for r in doc["ranks"]} == t.ranks
    assert doc["torsion"] == {"uX": 2, "ut": 1, "uh": None, "pg": 2}
    assert set(doc["bounds"]) == {"alt_lb", "dthin_lb", "turaev_lb", "unknotting_lb"}
    assert report_json(t, p, b) == report_json(t, p, b)


@pytest.mark.parametrize("e", SMALL[:30], ids=lambda e: e.name)
def test_mirror_symmetry_of_tables(e):
    d = e.diagram()
    assert kh_table(mirror(d), QQ).ranks == kh_table(d, QQ).mirrored().ranks


def test_invariant_failure_is_runtime_error():
    assert issubclass(InvariantFailure, RuntimeError)
