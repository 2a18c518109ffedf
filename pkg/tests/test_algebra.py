from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from khbounds.algebra import (QQ, ComplexError, MPoly, MultivariateIntegerPolynomials,
                              NotAField, PrimeField, RingMismatch, SparseMatrix, UPoly,
                              UnivariatePolynomials, UnsupportedRing, field_from_name,
                              homology_of_complex_over_pid, rank, smith_normal_form)

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def px(F, *coeffs):
    return UPoly(F, coeffs)


def poly_matrix(F, rows):
    ring = UnivariatePolynomials(F, "x")
    ent = {}
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            p = v if isinstance(v, UPoly) else UPoly(F, [v])
            if not p.is_zero():
                ent[(r, c)] = p
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, ent, ring)


# -- fields

def test_prime_field_checks_primality():
    with pytest.raises(ValueError):
        PrimeField(9)
    assert F5(7) == 2
    assert F5.inv(2) == 3
    assert F3(Fraction(1, 2)) == 2


def test_field_names():
    assert field_from_name("Q") is QQ
    assert field_from_name("gf7") == PrimeField(7)
    with pytest.raises(ValueError):
        field_from_name("R")


def test_variable_names_distinct():
    with pytest.raises(ValueError):
        MultivariateIntegerPolynomials(("h", "h"))


# -- rank

def test_rank_examples():
    assert rank(SparseMatrix(0, 0, {}, QQ), QQ) == 0
    assert rank(SparseMatrix.identity(2, F3), F3) == 2
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]], QQ), QQ) == 1


def test_rank_rejects_polynomial_ring():
    m = poly_matrix(QQ, [[px(QQ, 0, 1)]])
    with pytest.raises(NotAField):
        rank(m)


def test_sparse_matrix_drops_zeros_and_checks_indices():
    m = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): 3}, QQ)
    assert m.entries == {(1, 1): 3}
    with pytest.raises(IndexError):
        SparseMatrix(1, 1, {(1, 0): 1}, QQ)


def _dense_rank_mod(rows, p):
    # plain elimination on a copy, independent of the sparse code
    a = [[x % p for x in r] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


small_int_matrix = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(st.integers(-4, 4), min_size=m, max_size=m),
                           min_size=n, max_size=n)))


@given(small_int_matrix)
@settings(max_examples=150, deadline=None)
def test_rank_over_q_matches_sympy(rows):
    assert rank(SparseMatrix.from_dense(rows, QQ), QQ) == sympy.Matrix(rows).rank()


@given(small_int_matrix, st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=150, deadline=None)
def test_rank_mod_p_matches_dense_oracle(rows, p):
    F = PrimeField(p)
    m = SparseMatrix.from_dense([[F(x) for x in r] for r in rows], F)
    got = rank(m, F)
    assert got == _dense_rank_mod(rows, p)
    # reduction mod p can only lose rank
    assert got <= sympy.Matrix(rows).rank()


# -- Smith normal form

def test_snf_diagonal():
    x = px(QQ, 0, 1)
    m = poly_matrix(QQ, [[1, 0, 0], [0, x, 0], [0, 0, x * x]])
    inv = smith_normal_form(m)
    assert [f.degree for f in inv.factors] == [0, 1, 2]
    assert inv.free_rank == 0


def test_snf_upper_triangular():
    x = px(QQ, 0, 1)
    inv = smith_normal_form(poly_matrix(QQ, [[x, 1], [0, x]]))
    assert inv.factors == [px(QQ, 1), px(QQ, 0, 0, 1)]


def test_snf_zero_matrix():
    m = SparseMatrix(3, 2, {}, UnivariatePolynomials(QQ, "x"))
    inv = smith_normal_form(m)
    assert inv.factors == [] and inv.free_rank == 2


def test_snf_rejects_field_matrix():
    with pytest.raises(UnsupportedRing):
        smith_normal_form(SparseMatrix.identity(2, QQ))


poly_entry = st.lists(st.integers(-2, 2), min_size=0, max_size=3)


def _sympy_det_divisor(rows, k, x):
    g = sympy.Integer(0)
    n, m = len(rows), len(rows[0])
    for rs in combinations(range(n), k):
        for cs in combinations(range(m), k):
            det = sympy.Matrix([[rows[r][c] for c in cs] for r in rs]).det()
            g = sympy.gcd(g, sympy.expand(det))
    return sympy.Poly(g, x, domain="QQ") if g != 0 else None


@given(st.integers(1, 4).flatmap(lambda n: st.integers(1, 4).flatmap(
    lambda m: st.lists(st.lists(poly_entry, min_size=m, max_size=m), min_size=n, max_size=n))))
@settings(max_examples=60, deadline=None)
def test_snf_matches_determinantal_divisors(cells):
    x = sympy.Symbol("x")
    sym = [[sum(c * x ** k for k, c in enumerate(e)) for e in row] for row in cells]
    m = poly_matrix(QQ, [[UPoly(QQ, e) for e in row] for row in cells])
    inv = smith_normal_form(m)
    fs = inv.factors
    for a, b in zip(fs, fs[1:]):
        assert (b % a).is_zero()
    assert all(f.lead() == 1 for f in fs)
    assert len(fs) == sympy.Matrix(sym).rank()
    prod = UPoly(QQ, [1])
    for k, f in enumerate(fs, 1):
        prod = prod * f
        dk = _sympy_det_divisor(sym, k, x)
        want = [QQ(Fraction(int(c.p), int(c.q))) for c in reversed(dk.monic().all_coeffs())]
        assert prod == UPoly(QQ, want)


# -- homology over F[x]

def test_homology_over_pid_examples():
    ring = UnivariatePolynomials(QQ, "x")
    x = px(QQ, 0, 1)
    z12 = SparseMatrix(2, 1, {}, ring)
    z21 = SparseMatrix(1, 2, {}, ring)
    assert homology_of_complex_over_pid(z12, z21) == (2, [])
    d_in = poly_matrix(QQ, [[x]])
    zero = SparseMatrix(1, 1, {}, ring)
    assert homology_of_complex_over_pid(d_in, zero) == (0, [x])
    assert homology_of_complex_over_pid(SparseMatrix(1, 0, {}, ring), d_in) == (0, [])


def test_homology_over_pid_rejects_noncomplex():
    x = px(QQ, 0, 1)
    d = poly_matrix(QQ, [[x]])
    with pytest.raises(ComplexError):
        homology_of_complex_over_pid(d, d)
    with pytest.raises(ComplexError):
        homology_of_complex_over_pid(poly_matrix(QQ, [[x, x]]), d)


def _elementary(F, n, i, j, k, c):
    ent = {(r, r): UPoly(F, [1]) for r in range(n)}
    ent[(i, j)] = UPoly.monomial(F, k, c)
    return SparseMatrix(n, n, ent, UnivariatePolynomials(F, "x"))


@st.composite
def pid_complexes(draw):
    """A random three-term complex over F3[x]: block form conjugated in the
    middle by random elementary matrices."""
    F = F3
    a = draw(st.integers(0, 3))
    k1 = draw(st.integers(1, 3))
    k2 = draw(st.integers(0, 3))
    b = draw(st.integers(0, 3))
    ent = lambda: UPoly(F, draw(st.lists(st.integers(0, 2), max_size=3)))
    A = {(r, c): ent() for r in range(k1) for c in range(a)}
    B = {(r, k1 + c): ent() for r in range(b) for c in range(k2)}
    ring = UnivariatePolynomials(F, "x")
    n = k1 + k2
    d_in = SparseMatrix(n, a, {k: v for k, v in A.items() if not v.is_zero()}, ring)
    d_out = SparseMatrix(b, n, {k: v for k, v in B.items() if not v.is_zero()}, ring)
    for _ in range(draw(st.integers(0, 4))):
        if n < 2:
            break
        i, j = draw(st.sampled_from([(i, j) for i in range(n) for j in range(n) if i != j]))
        k, c = draw(st.integers(0, 2)), draw(st.integers(1, 2))
        G = _elementary(F, n, i, j, k, c)
        Ginv = _elementary(F, n, i, j, k, -c)
        d_in = G.matmul(d_in)
        d_out = d_out.matmul(Ginv)
    return d_in, d_out


def _at_zero(m, F):
    return SparseMatrix(m.rows, m.cols, {k: F(v(0)) for k, v in m.entries.items()}, F)


@given(pid_complexes())
@settings(max_examples=80, deadline=None)
def test_homology_at_x_zero_matches_field_homology(pair):
    d_in, d_out = pair
    free, tors = homology_of_complex_over_pid(d_in, d_out)
    n = d_in.rows
    dim = n - rank(_at_zero(d_in, F3), F3) - rank(_at_zero(d_out, F3), F3)
    # universal coefficients: torsion at this spot and the one above both
    # contribute once for every factor divisible by x
    above = smith_normal_form(d_out).torsion() if d_out.entries else []
    x_div = lambda fs: sum(1 for f in fs if f(0) == 0)
    assert dim == free + x_div(tors) + x_div(above)


# -- polynomials

def test_mpoly_difference_of_squares():
    v = ("X", "h")
    X, h = MPoly.var(v, "X"), MPoly.var(v, "h")
    assert (X + h) * (X - h) == X ** 2 - h ** 2
    assert repr(X ** 2 - h ** 2) == "X^2 - h^2"


def test_reduce_power_sl2_and_sl3():
    v = ("X", "h", "t")
    X, h, t = (MPoly.var(v, s) for s in v)
    assert (X ** 2).reduce_power("X", 2, h * X + t) == h * X + t
    w = ("X", "a", "b", "c")
    X, a, b, c = (MPoly.var(w, s) for s in w)
    tail = a * X ** 2 + b * X + c
    assert (X ** 3).reduce_power("X", 3, tail) == tail


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatch):
        MPoly.var(("X",), "X") + MPoly.var(("Y",), "Y")
    with pytest.raises(RingMismatch):
        px(F3, 1) + px(F5, 1)


@given(st.lists(st.integers(-3, 3), max_size=4), st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_upoly_division(a, b):
    A, B = UPoly(QQ, a), UPoly(QQ, b)
    if B.is_zero():
        return
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.degree < B.degree
