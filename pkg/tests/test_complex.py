import random

import pytest
from hypothesis import given, settings, strategies as st

from khbounds.algebra import QQ, PrimeField, SparseMatrix
from khbounds.complex import (BAR_NATAN, LEE, NONE, CubeTooLarge, DeformationMismatch,
                              GradedComplex, NonUnitPivot, ResourceCapExceeded,
                              build_full_cube, deformation_for, deloop, dump,
                              gauss_cancel, load, scan_build, scan_reduced, simplify,
                              verify_d_squared)
from khbounds.corpus import corpus_knot, load_corpus
from khbounds.diagram import jones_unnormalized, parse_pd, torus_knot
from khbounds.frobenius import make_system
from khbounds.homology import field_homology

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
SMALL = [e for e in load_corpus() if e.diagram().c <= 7]


def _flip_one_sign(c):
    """Negate one nonzero entry of some d_i whose neighbour is nonzero too."""
    bad = c.copy()
    for i in bad.degrees():
        a, b = bad.diff(i), bad.diff(i + 1)
        if a.is_zero() or b.is_zero():
            continue
        for (r, col), v in sorted(a.entries.items()):
            if any(rr == r for (_, rr) in b.entries):
                ent = dict(a.entries)
                ent[(r, col)] = bad.field(-v)
                bad.d[i] = SparseMatrix(a.rows, a.cols, ent, bad.field)
                if not verify_d_squared(bad):
                    return bad
                bad.d[i] = a
    return None


@pytest.mark.parametrize("e", SMALL[:20], ids=lambda e: e.name)
def test_scan_matches_cube(e):
    d = e.diagram()
    assert field_homology(scan_build(d, QQ)) == field_homology(build_full_cube(d, QQ))


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2"])
@pytest.mark.parametrize("dfm,F", [(NONE, QQ), (LEE, F3), (BAR_NATAN, F2)])
def test_d_squared_both_routes(name, dfm, F):
    d = corpus_knot(name)
    cube = build_full_cube(d, F, dfm)
    scan = scan_build(d, F, dfm, simplify_result=False)
    assert verify_d_squared(cube) and verify_d_squared(scan)
    assert not cube.check_gradings() and not scan.check_gradings()


def test_flipped_sign_is_caught():
    bad = _flip_one_sign(build_full_cube(corpus_knot("3_1"), QQ))
    assert bad is not None and not verify_d_squared(bad)


def test_unknot_complex():
    for build in (build_full_cube, scan_build):
        c = build(parse_pd("PD[]"), QQ)
        assert field_homology(c) == {(0, 1): 1, (0, -1): 1}
    assert field_homology(scan_reduced(parse_pd("PD[]"), QQ)) == {(0, 0): 1}


def test_kink_complex():
    # a one-crossing diagram of the unknot
    d = parse_pd("PD[X(1,1,2,2)]")
    assert field_homology(build_full_cube(d, QQ)) == {(0, 1): 1, (0, -1): 1}
    assert field_homology(scan_build(d, QQ)) == {(0, 1): 1, (0, -1): 1}


@pytest.mark.parametrize("e", SMALL[:25], ids=lambda e: e.name)
def test_euler_characteristic_is_jones(e):
    d = e.diagram()
    assert build_full_cube(d, QQ).euler_characteristic() == jones_unnormalized(d)


def test_reduced_euler_characteristic():
    d = corpus_knot("3_1")
    red = scan_reduced(d, QQ).euler_characteristic()
    full = jones_unnormalized(d)
    # (q + q^-1) times the reduced one gives the unreduced polynomial
    prod = {}
    for j, c in red.items():
        for s in (1, -1):
            prod[j + s] = prod.get(j + s, 0) + c
    assert {j: c for j, c in prod.items() if c} == full


def test_cube_cap():
    with pytest.raises(CubeTooLarge):
        build_full_cube(torus_knot(5, 6), QQ, cap=10)


def test_scan_object_cap():
    with pytest.raises(ResourceCapExceeded):
        scan_build(torus_knot(3, 4), QQ, max_objects=3)


def test_deformation_rules():
    assert deformation_for("lee", F3) is LEE
    assert deformation_for("bn", F2) is BAR_NATAN
    with pytest.raises(DeformationMismatch):
        deformation_for("lee", F2)
    with pytest.raises(DeformationMismatch):
        deformation_for("barnatan", QQ)


def _two_term(F, entries, j0=0, j1=0):
    gens = {0: [(j0, "a%d" % k) for k in range(2)], 1: [(j1, "b%d" % k) for k in range(2)]}
    return GradedComplex(F, NONE, gens, {0: SparseMatrix(2, 2, entries, F)})


def test_gauss_cancel_example():
    c = _two_term(QQ, {(0, 0): 1, (1, 0): 2, (0, 1): 3})
    out = gauss_cancel(c, 0, 0, 0)
    assert out.size() == 2
    # remaining map b1 <- a1 is 0 - 2*3 = -6
    assert list(out.diff(0).entries.values()) == [-6]
    assert field_homology(out) == field_homology(c)


def test_gauss_cancel_needs_unit():
    c = _two_term(QQ, {(0, 0): 0, (1, 1): 1})
    with pytest.raises((NonUnitPivot, KeyError, ValueError)):
        gauss_cancel(c, 0, 0, 0)


@st.composite
def f5_complexes(draw):
    """Three-term complex over F5 with d_1 d_0 = 0 by construction."""
    F = F5
    n0, n1, n2 = (draw(st.integers(1, 4)) for _ in range(3))
    k = draw(st.integers(0, n1))
    # split C^{n1} = image part (first k coords) + complement; d_0 lands in the
    # first k, d_1 kills the first k
    d0 = {(r, c): F(draw(st.integers(0, 4))) for r in range(k) for c in range(n0)}
    d1 = {(r, k + c): F(draw(st.integers(0, 4))) for r in range(n2) for c in range(n1 - k)}
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    # random change of basis in the middle keeps d^2 = 0
    for _ in range(3):
        if n1 < 2:
            break
        a, b = rng.sample(range(n1), 2)
        s = rng.randint(1, 4)
        # row op on d0 (r_a += s r_b), column op on d1 (c_b -= s c_a)
        for c in range(n0):
            d0[(a, c)] = F(d0.get((a, c), 0) + s * d0.get((b, c), 0))
        for r in range(n2):
            d1[(r, b)] = F(d1.get((r, b), 0) - s * d1.get((r, a), 0))
    gens = {0: [(0, "")] * n0, 1: [(0, "")] * n1, 2: [(0, "")] * n2}
    clean = lambda m: {k: v for k, v in m.items() if v}
    return GradedComplex(F, NONE, gens, {0: SparseMatrix(n1, n0, clean(d0), F),
                                         1: SparseMatrix(n2, n1, clean(d1), F)})


@given(f5_complexes())
@settings(max_examples=100, deadline=None)
def test_simplify_preserves_homology(c):
    assert verify_d_squared(c)
    s = simplify(c)
    assert verify_d_squared(s)
    assert field_homology(s) == field_homology(c)
    # after simplifying, no j-preserving entries are left
    assert all(s.diff(i).is_zero() for i in s.degrees())


def test_dump_load_roundtrip():
    c = build_full_cube(corpus_knot("3_1"), F3, LEE)
    back = load(dump(c))
    assert dump(back) == dump(c)
    assert field_homology(back) == field_homology(c)


def test_deloop_rank2():
    s = make_system("universal_sl2")
    one = deloop(s)
    assert [q for q, _, _ in one] == [1, -1]
    assert len(deloop(s, 2)) == 4
    with pytest.raises(ValueError):
        deloop(s, 0)
