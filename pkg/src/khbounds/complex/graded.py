"""Bigraded free chain complexes with monomial differentials.

Generators live in homological degree i and carry a quantum grading j.  A
differential entry from a generator at j1 to one at j2 is stored as a plain
scalar c; its meaning is ``c * u^((j2 - j1) / step)`` where u is the
deformation parameter of the complex (t for Lee, h for Bar-Natan, X for the
reduced Lee complex) and ``step`` is the quantum degree shift of u.  For an
undeformed complex every entry has j2 == j1.

Setting u = 1 gives the filtered complex (filtration by j); keeping u formal
gives a graded complex of free F[u]-modules.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..algebra.fields import Field, UnivariatePolynomials, field_from_name
from ..algebra.matrix import SparseMatrix
from ..algebra.poly import UPoly


@dataclass(frozen=True)
class Deformation:
    kind: str = "none"        # none | lee | barnatan | lee_reduced
    step: int = 0             # quantum degree of the deformation parameter
    var: str = ""

    @property
    def h(self) -> int:
        return 1 if self.kind == "barnatan" else 0

    @property
    def t(self) -> int:
        return 1 if self.kind in ("lee", "lee_reduced") else 0


NONE = Deformation("none", 0, "")
LEE = Deformation("lee", 4, "t")
BAR_NATAN = Deformation("barnatan", 2, "h")
LEE_REDUCED = Deformation("lee_reduced", 2, "X")


class DeformationMismatch(ValueError):
    pass


def deformation_for(kind: str, F: Field) -> Deformation:
    kind = kind.lower().replace("-", "_")
    if kind in ("none", "kh", ""):
        return NONE
    if kind in ("lee",):
        if F.characteristic == 2:
            raise DeformationMismatch("Lee deformation needs characteristic != 2; use barnatan")
        return LEE
    if kind in ("barnatan", "bn", "bar_natan"):
        if F.characteristic != 2:
            raise DeformationMismatch("Bar-Natan deformation is used over F2 only")
        return BAR_NATAN
    raise ValueError(f"unknown deformation {kind!r}")


@dataclass
class GradedComplex:
    """gens[i] is a list of (j, label); d[i] maps degree i to i+1 with
    rows indexed by gens[i+1] and columns by gens[i]."""

    field: Field
    deformation: Deformation = NONE
    gens: Dict[int, List[Tuple[int, str]]] = field(default_factory=dict)
    d: Dict[int, SparseMatrix] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def degrees(self) -> List[int]:
        return sorted(i for i, g in self.gens.items() if g)

    def size(self) -> int:
        return sum(len(g) for g in self.gens.values())

    def diff(self, i: int) -> SparseMatrix:
        rows = len(self.gens.get(i + 1, []))
        cols = len(self.gens.get(i, []))
        m = self.d.get(i)
        if m is None:
            return SparseMatrix(rows, cols, {}, self.field)
        return m

    def gradings(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for i, g in self.gens.items():
            for j, _ in g:
                out[(i, j)] = out.get((i, j), 0) + 1
        return out

    def euler_characteristic(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (i, j), k in self.gradings().items():
            out[j] = out.get(j, 0) + (-1) ** (i % 2) * k
        return {j: c for j, c in out.items() if c}

    def check_gradings(self) -> List[str]:
        """Entries must have j2 - j1 a nonnegative multiple of step (or 0)."""
        bad = []
        for i in self.degrees():
            m = self.diff(i)
            for (r, c), v in m.entries.items():
                dj = self.gens[i + 1][r][0] - self.gens[i][c][0]
                if self.deformation.step == 0:
                    ok = dj == 0
                else:
                    ok = dj >= 0 and dj % self.deformation.step == 0
                if not ok:
                    bad.append(f"degree {i}: entry ({r},{c}) shifts j by {dj}")
        return bad

    def undeformed(self) -> "GradedComplex":
        """Keep only the j-preserving part of the differential (u = 0)."""
        d = {}
        for i in self.degrees():
            m = self.diff(i)
            ent = {(r, c): v for (r, c), v in m.entries.items()
                   if self.gens[i + 1][r][0] == self.gens[i][c][0]}
            d[i] = SparseMatrix(m.rows, m.cols, ent, self.field)
        return GradedComplex(self.field, NONE, {i: list(g) for i, g in self.gens.items()}, d,
                             dict(self.meta))

    def poly_matrix(self, i: int) -> SparseMatrix:
        """d_i over F[u] with each entry c * u^k as a UPoly."""
        F = self.field
        step = self.deformation.step
        m = self.diff(i)
        ent = {}
        for (r, c), v in m.entries.items():
            dj = self.gens[i + 1][r][0] - self.gens[i][c][0]
            k = dj // step if step else 0
            ent[(r, c)] = UPoly.monomial(F, k, v)
        return SparseMatrix(m.rows, m.cols, ent,
                            UnivariatePolynomials(F, self.deformation.var or "u"))

    def copy(self) -> "GradedComplex":
        return GradedComplex(self.field, self.deformation,
                             {i: list(g) for i, g in self.gens.items()},
                             {i: SparseMatrix(m.rows, m.cols, dict(m.entries), m.ring)
                              for i, m in self.d.items()},
                             dict(self.meta))

    def shifted(self, di: int, dj: int) -> "GradedComplex":
        return GradedComplex(
            self.field, self.deformation,
            {i + di: [(j + dj, lab) for j, lab in g] for i, g in self.gens.items()},
            {i + di: m for i, m in self.d.items()}, dict(self.meta))


def verify_d_squared(c: GradedComplex) -> bool:
    """Every composite d_{i+1} d_i vanishes.  Monomial entries compose to a
    fixed power of u per (row, col), so the scalar check is exact."""
    F = c.field
    for i in c.degrees():
        a = c.diff(i)
        b = c.diff(i + 1)
        if a.is_zero() or b.is_zero():
            continue
        prod = b.matmul(a, F)
        if not prod.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# Gaussian elimination

class NonUnitPivot(ValueError):
    pass


class _Work:
    """Mutable adjacency form of a complex used during cancellation."""

    def __init__(self, c: GradedComplex):
        self.F = c.field
        self.c = c
        self.gen: Dict[Tuple[int, int], Tuple[int, str]] = {}
        self.out: Dict[Tuple[int, int], Dict[Tuple[int, int], object]] = {}
        self.inn: Dict[Tuple[int, int], set] = {}
        for i, g in c.gens.items():
            for k, x in enumerate(g):
                self.gen[(i, k)] = x
                self.out[(i, k)] = {}
                self.inn[(i, k)] = set()
        for i, m in c.d.items():
            for (r, col), v in m.entries.items():
                s, t = (i, col), (i + 1, r)
                self.out[s][t] = v
                self.inn[t].add(s)

    def cancel(self, b, c_):
        F = self.F
        phi = self.out[b].get(c_)
        if phi is None or phi == 0:
            raise NonUnitPivot("pivot entry is zero")
        if self.gen[b][0] != self.gen[c_][0]:
            raise NonUnitPivot("pivot entry carries a positive power of the deformation parameter")
        inv = F.inv(phi)
        gam = [(y, v) for y, v in self.out[b].items() if y != c_]
        for x in list(self.inn[c_]):
            if x == b:
                continue
            delta = self.out[x][c_]
            f = F(-delta * inv)
            ox = self.out[x]
            for y, g in gam:
                nv = F(ox.get(y, 0) + f * g)
                if nv == 0:
                    if y in ox:
                        del ox[y]
                        self.inn[y].discard(x)
                else:
                    if y not in ox:
                        self.inn[y].add(x)
                    ox[y] = nv
        for z in (b, c_):
            for y in self.out[z]:
                self.inn[y].discard(z)
            for x in self.inn[z]:
                self.out[x].pop(z, None)
            del self.out[z], self.inn[z], self.gen[z]

    def unit_pivots(self):
        for s, o in self.out.items():
            js = self.gen[s][0]
            for t, v in o.items():
                if self.gen[t][0] == js:
                    yield s, t

    def reduce_all(self):
        """Cancel every j-preserving entry, cheapest fill-in first."""
        heap = []
        for s, t in self.unit_pivots():
            heap.append(((len(self.inn[t]) - 1) * (len(self.out[s]) - 1), s, t))
        heapq.heapify(heap)
        while heap:
            cost, s, t = heapq.heappop(heap)
            if s not in self.out or t not in self.out[s]:
                continue
            now = (len(self.inn[t]) - 1) * (len(self.out[s]) - 1)
            if now > cost:
                heapq.heappush(heap, (now, s, t))
                continue
            touched = [x for x in self.inn[t] if x != s]
            self.cancel(s, t)
            for x in touched:
                if x not in self.out:
                    continue
                jx = self.gen[x][0]
                for y in self.out[x]:
                    if self.gen[y][0] == jx:
                        heapq.heappush(heap, ((len(self.inn[y]) - 1) * (len(self.out[x]) - 1), x, y))

    def freeze(self) -> GradedComplex:
        c = self.c
        gens: Dict[int, List[Tuple[int, str]]] = {}
        index: Dict[Tuple[int, int], int] = {}
        for key in sorted(self.gen, key=lambda k: (k[0], self.gen[k][0], k[1])):
            i = key[0]
            lst = gens.setdefault(i, [])
            index[key] = len(lst)
            lst.append(self.gen[key])
        ents: Dict[int, dict] = {}
        for k in self.gen:
            for t, v in self.out[k].items():
                ents.setdefault(k[0], {})[(index[t], index[k])] = v
        d: Dict[int, SparseMatrix] = {}
        for i, ent in ents.items():
            d[i] = SparseMatrix(len(gens[i + 1]), len(gens[i]), ent, c.field)
        return GradedComplex(c.field, c.deformation, gens, d, dict(c.meta))


def gauss_cancel(c: GradedComplex, i: int, row: int, col: int) -> GradedComplex:
    """Cancel the entry of d_i at (row, col), which must be a unit scalar with
    no deformation power.  Returns a homotopy-equivalent complex."""
    w = _Work(c)
    w.cancel((i, col), (i + 1, row))
    return w.freeze()


def simplify(c: GradedComplex) -> GradedComplex:
    """Cancel all j-preserving entries.  Over F[u] this is a graded homotopy
    equivalence; at u = 1 it is a filtered one (so the spectral sequence from
    the E_1 page on is unchanged)."""
    w = _Work(c)
    w.reduce_all()
    return w.freeze()


# ---------------------------------------------------------------------------
# text dump

def dump(c: GradedComplex) -> str:
    lines = [f"field {c.field!r}", f"deformation {c.deformation.kind} {c.deformation.step} {c.deformation.var or '-'}"]
    for i in c.degrees():
        for k, (j, lab) in enumerate(c.gens[i]):
            lines.append(f"gen {i} {k} {j} {lab or '-'}")
    for i in sorted(c.d):
        for (r, col), v in sorted(c.d[i].entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            lines.append(f"d {i} {col} {r} {v}")
    return "\n".join(lines) + "\n"


def load(text: str) -> GradedComplex:
    from fractions import Fraction
    F = None
    dfm = NONE
    gens: Dict[int, List[Tuple[int, str]]] = {}
    ents: Dict[int, Dict[Tuple[int, int], object]] = {}
    for line in text.splitlines():
        p = line.split()
        if not p:
            continue
        if p[0] == "field":
            F = field_from_name(p[1])
        elif p[0] == "deformation":
            dfm = Deformation(p[1], int(p[2]), "" if p[3] == "-" else p[3])
        elif p[0] == "gen":
            i, k, j = int(p[1]), int(p[2]), int(p[3])
            lst = gens.setdefault(i, [])
            if k != len(lst):
                raise ValueError("generators out of order in dump")
            lst.append((j, "" if p[4] == "-" else p[4]))
        elif p[0] == "d":
            i, col, r = int(p[1]), int(p[2]), int(p[3])
            ents.setdefault(i, {})[(r, col)] = F(Fraction(p[4]))
    d = {i: SparseMatrix(len(gens.get(i + 1, [])), len(gens.get(i, [])), e, F)
         for i, e in ents.items()}
    return GradedComplex(F, dfm, gens, d)
