"""Sparse matrices, rank over a field, Smith normal form over F[x].

A SparseMatrix is an immutable-by-convention value: ``entries`` maps
``(row, col)`` to a nonzero scalar.  Scalars are either field elements
(plain numbers, see ``fields``) or UPoly instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .fields import Field, PrimeField, UnivariatePolynomials
from .poly import UPoly


class NotAField(TypeError):
    pass


class UnsupportedRing(TypeError):
    pass


class ComplexError(ValueError):
    """Differentials do not compose, or compose to something nonzero."""


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)
    ring: object = None   # a Field or a UnivariatePolynomials descriptor

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            if isinstance(v, UPoly):
                if v.is_zero():
                    continue
            elif v == 0:
                continue
            clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows, ring=None) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if ring is not None and isinstance(ring, Field):
                    v = ring(v)
                ent[(i, j)] = v
        return cls(nr, nc, ent, ring)

    @classmethod
    def identity(cls, n, ring=None) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    def to_dense(self, zero=0):
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> Dict[int, Dict[int, object]]:
        out: Dict[int, Dict[int, object]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()}, self.ring)

    def matmul(self, other: "SparseMatrix", F: Optional[Field] = None) -> "SparseMatrix":
        if self.cols != other.rows:
            raise ComplexError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        orows = other.row_dicts()
        out: Dict[Tuple[int, int], object] = {}
        for (r, k), a in self.entries.items():
            for c, b in orows.get(k, {}).items():
                out[(r, c)] = out.get((r, c), 0) + a * b
        if F is not None:
            out = {k: F(v) for k, v in out.items()}
        return SparseMatrix(self.rows, other.cols, out, self.ring)

    def is_zero(self) -> bool:
        return not self.entries

    def submatrix(self, rows, cols) -> "SparseMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        ent = {(rmap[r], cmap[c]): v for (r, c), v in self.entries.items()
               if r in rmap and c in cmap}
        return SparseMatrix(len(rmap), len(cmap), ent, self.ring)


# ---------------------------------------------------------------------------
# rank over a field

def _rank_f2(rowdicts) -> int:
    # bitset rows; plain xor elimination
    pivots: Dict[int, int] = {}
    rank = 0
    for rd in rowdicts:
        v = 0
        for c, a in rd.items():
            if a % 2:
                v |= 1 << c
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                rank += 1
                break
            v ^= p
    return rank


def rank(m: SparseMatrix, F: Optional[Field] = None) -> int:
    """Rank over a field by sparse Gaussian elimination.

    Rows are eliminated shortest-first, which keeps fill-in small on the
    differentials we see.  Deterministic for a fixed input.
    """
    F = F if F is not None else m.ring
    if not isinstance(F, Field):
        raise NotAField(f"rank needs a field, got {F!r}")
    if not m.entries:
        return 0
    rows = [dict(rd) for _, rd in sorted(m.row_dicts().items())]
    if isinstance(F, PrimeField) and F.p == 2:
        return _rank_f2(rows)
    rows.sort(key=len)
    pivots: Dict[int, Dict[int, object]] = {}   # pivot col -> normalized row
    r = 0
    for row in rows:
        row = {c: F(a) for c, a in row.items() if F(a) != 0}
        while row:
            c0 = min(row)
            prow = pivots.get(c0)
            if prow is None:
                inv = F.inv(row[c0])
                pivots[c0] = {c: F(a * inv) for c, a in row.items()}
                r += 1
                break
            f = row[c0]
            for c, a in prow.items():
                v = F(row.get(c, 0) - f * a)
                if v == 0:
                    row.pop(c, None)
                else:
                    row[c] = v
    return r


# ---------------------------------------------------------------------------
# Smith normal form over F[x]

@dataclass
class InvariantFactors:
    """Invariant factors f1 | f2 | ... | fk (monic) of a matrix over F[x].

    ``free_rank`` is ``cols - k``: the rank of the kernel of the matrix viewed
    as a map F[x]^cols -> F[x]^rows.  Unit factors (the constant 1) are kept
    in ``factors`` so that ``len(factors)`` is the rank.
    """
    factors: List[UPoly]
    free_rank: int

    @property
    def rank(self) -> int:
        return len(self.factors)

    def torsion(self) -> List[UPoly]:
        return [f for f in self.factors if f.degree > 0]


def _poly_ring_field(m: SparseMatrix) -> Field:
    R = m.ring
    if isinstance(R, UnivariatePolynomials):
        return R.base
    for v in m.entries.values():
        if isinstance(v, UPoly):
            return v.F
    if isinstance(R, Field):
        raise UnsupportedRing("smith_normal_form expects a matrix over F[x], got a field")
    raise UnsupportedRing(f"unsupported ring {R!r}")


def smith_normal_form(m: SparseMatrix) -> InvariantFactors:
    """Invariant factors of a matrix over F[x] (Euclidean reduction).

    Pivot: a nonzero entry of least degree, ties broken by (row, col).
    """
    if not m.entries:
        return InvariantFactors([], m.cols)
    F = _poly_ring_field(m)
    rows: Dict[int, Dict[int, UPoly]] = {}
    cols: Dict[int, set] = {}
    for (r, c), v in m.entries.items():
        if not isinstance(v, UPoly):
            v = UPoly(F, [v])
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def setv(r, c, v):
        if v.is_zero():
            rows[r].pop(c, None)
            if not rows[r]:
                del rows[r]
            cols[c].discard(r)
            if not cols[c]:
                del cols[c]
        else:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    factors: List[UPoly] = []
    while rows:
        best = None
        for r, rd in rows.items():
            for c, v in rd.items():
                key = (v.degree, r, c)
                if best is None or key < best:
                    best = key
        _, r0, c0 = best
        p = rows[r0][c0]
        dirty = False
        # clear column c0 with row operations
        for r in sorted(cols[c0] - {r0}):
            q, rem = divmod(rows[r][c0], p)
            for c, a in list(rows[r0].items()):
                setv(r, c, rows.get(r, {}).get(c, UPoly(F)) - q * a)
            if not rem.is_zero():
                dirty = True
        # clear row r0 with column operations
        for c in sorted(set(rows[r0]) - {c0}):
            q, rem = divmod(rows[r0][c], p)
            for r in list(cols[c0]):
                setv(r, c, rows.get(r, {}).get(c, UPoly(F)) - q * rows[r][c0])
            if not rem.is_zero():
                dirty = True
        if dirty:
            continue
        # now (r0, c0) is alone in its row and column
        bad = None
        for r, rd in rows.items():
            if r == r0:
                continue
            for c, v in rd.items():
                if not (v % p).is_zero():
                    bad = r
                    break
            if bad is not None:
                break
        if bad is not None:
            for c, a in list(rows[bad].items()):
                setv(r0, c, rows.get(r0, {}).get(c, UPoly(F)) + a)
            continue
        factors.append(p.monic())
        setv(r0, c0, UPoly(F))
    factors.sort(key=lambda f: f.degree)
    return InvariantFactors(factors, m.cols - len(factors))


def _is_zero_scalar(v) -> bool:
    return v.is_zero() if isinstance(v, UPoly) else v == 0


def homology_of_complex_over_pid(d_in: SparseMatrix, d_out: SparseMatrix):
    """Homology at the middle spot of  . --d_in--> M --d_out--> .  over F[x].

    Returns ``(free_rank, torsion)`` with torsion the non-unit invariant
    factors of d_in.  The kernel of d_out is a direct summand of the free
    module M, so the torsion of ker/im is the torsion of M/im(d_in).
    """
    if d_in.rows != d_out.cols:
        raise ComplexError(f"d_in has {d_in.rows} rows but d_out has {d_out.cols} columns")
    prod = d_out.matmul(d_in)
    if any(not _is_zero_scalar(v) for v in prod.entries.values()):
        raise ComplexError("d_out * d_in is not zero")
    n = d_in.rows
    if d_in.entries:
        inv_in = smith_normal_form(d_in)
        r_in, tors = inv_in.rank, inv_in.torsion()
    else:
        r_in, tors = 0, []
    r_out = smith_normal_form(d_out).rank if d_out.entries else 0
    return n - r_in - r_out, tors
