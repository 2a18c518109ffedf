"""Homology tables, torsion orders, spectral-sequence pages and the bounds.

Conventions used throughout:

* ``kh_table`` ranks are over a field, gradings normalised so the unknot
  sits at (0, +-1).
* Torsion orders come from the deformed complexes over F[u]: u_X from the
  pointed (reduced) Lee complex over F[X] with X^2 = t, u_t from the
  unreduced Lee complex over F[t], u_h from the unreduced Bar-Natan complex
  over F2[h].
* Pages are numbered the way the bounds use them: on page k the Lee
  differential raises j by 4k, the Bar-Natan one by 2k, E_1 is Khovanov
  homology and pg = 1 if nothing ever moves.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra.fields import QQ, Field, field_from_name
from .algebra.matrix import rank, smith_normal_form
from .complex.cube import DEFAULT_CAP, build_full_cube
from .complex.graded import (BAR_NATAN, LEE, NONE, Deformation, GradedComplex,
                             simplify, verify_d_squared)
from .complex.tangle import scan_build, scan_reduced
from .diagram import NotAKnotError, PlanarDiagram, link_components

Grid = Dict[Tuple[int, int], int]


class InvariantFailure(RuntimeError):
    """An internal consistency check failed (d^2 != 0, wrong free rank...)."""


def as_field(ring) -> Field:
    if isinstance(ring, Field):
        return ring
    return field_from_name(str(ring))


def _require_knot(d: PlanarDiagram) -> None:
    if d.c and (d.disconnected or link_components(d) != 1):
        raise NotAKnotError(f"{d.name or 'diagram'} is not a knot diagram")


# ---------------------------------------------------------------------------
# tables

@dataclass
class HomologyTable:
    ring: str
    ranks: Grid
    knot: str = ""

    def __post_init__(self):
        self.ranks = {k: v for k, v in self.ranks.items() if v}

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def diagonals(self) -> List[int]:
        return sorted({j - 2 * i for i, j in self.ranks})

    @property
    def width(self) -> int:
        dg = self.diagonals()
        if not dg:
            return 0
        return 1 + (dg[-1] - dg[0]) // 2

    @property
    def thin(self) -> bool:
        dg = self.diagonals()
        return bool(dg) and dg[-1] - dg[0] <= 2

    def odd_quantum(self) -> bool:
        return all(j % 2 for _, j in self.ranks)

    def poincare(self) -> Dict[Tuple[int, int], int]:
        return dict(sorted(self.ranks.items()))

    def euler(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (i, j), r in self.ranks.items():
            out[j] = out.get(j, 0) + (-1) ** (i % 2) * r
        return {j: c for j, c in out.items() if c}

    def mirrored(self) -> "HomologyTable":
        return HomologyTable(self.ring, {(-i, -j): r for (i, j), r in self.ranks.items()},
                             self.knot)

    # -- output
    def to_grid(self) -> str:
        """Rows are j (descending), columns i; blanks for zero."""
        if not self.ranks:
            return "(zero)\n"
        is_ = [i for i, _ in self.ranks]
        js = [j for _, j in self.ranks]
        i0, i1 = min(is_), max(is_)
        j0, j1 = min(js), max(js)
        step = 2 if all((j - j0) % 2 == 0 for j in js) else 1
        cols = list(range(i0, i1 + 1))
        cells = [[("" if self.rank(i, j) == 0 else str(self.rank(i, j))) for i in cols]
                 for j in range(j1, j0 - 1, -step)]
        head = ["j\\i"] + [str(i) for i in cols]
        rows = [[str(j)] + c for j, c in zip(range(j1, j0 - 1, -step), cells)]
        wid = [max(len(r[k]) for r in [head] + rows) for k in range(len(head))]
        fmt = lambda r: " ".join(s.rjust(w) for s, w in zip(r, wid)).rstrip()
        return "\n".join([fmt(head)] + [fmt(r) for r in rows]) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "rank"])
        for (i, j), r in sorted(self.ranks.items()):
            w.writerow([i, j, r])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "knot": self.knot,
            "ring": self.ring,
            "ranks": [{"i": i, "j": j, "rank": r} for (i, j), r in sorted(self.ranks.items())],
            "width": self.width,
            "thin": self.thin,
        }


def field_homology(c: GradedComplex) -> Grid:
    """Ranks of H(C) over the field of C, per (i, j); the differential must
    preserve j (an undeformed complex)."""
    F = c.field
    out: Grid = {}
    for i in c.degrees():
        by_j: Dict[int, List[int]] = {}
        for k, (j, _) in enumerate(c.gens[i]):
            by_j.setdefault(j, []).append(k)
        nxt: Dict[int, List[int]] = {}
        for k, (j, _) in enumerate(c.gens.get(i + 1, [])):
            nxt.setdefault(j, []).append(k)
        prv: Dict[int, List[int]] = {}
        for k, (j, _) in enumerate(c.gens.get(i - 1, [])):
            prv.setdefault(j, []).append(k)
        for j, cols in by_j.items():
            r_out = rank(c.diff(i).submatrix(nxt.get(j, []), cols), F) if nxt.get(j) else 0
            r_in = rank(c.diff(i - 1).submatrix(cols, prv.get(j, [])), F) if prv.get(j) else 0
            h = len(cols) - r_out - r_in
            if h:
                out[(i, j)] = h
    return out


def khovanov_complex(d: PlanarDiagram, F: Field, deformation: Deformation = NONE,
                     route: str = "scan", max_objects: Optional[int] = None,
                     progress=None, cap: int = DEFAULT_CAP) -> GradedComplex:
    if route == "cube":
        return build_full_cube(d, F, deformation, cap=cap)
    if route == "scan":
        return scan_build(d, F, deformation, max_objects=max_objects, progress=progress)
    raise ValueError(f"unknown route {route!r}")


def kh_table(d: PlanarDiagram, ring=QQ, route: str = "scan",
             max_objects: Optional[int] = None, progress=None, check: bool = False) -> HomologyTable:
    F = as_field(ring)
    c = khovanov_complex(d, F, NONE, route, max_objects, progress)
    if check and not verify_d_squared(c):
        raise InvariantFailure("d^2 != 0 in the Khovanov complex")
    return HomologyTable(F.name, field_homology(c), d.name)


# ---------------------------------------------------------------------------
# torsion over F[u]

def _over_poly_ring(c: GradedComplex):
    """(free rank per degree, torsion exponents per degree) of H(C) over F[u].

    Entries are monomials and the complex is graded, so every invariant
    factor is a power u^k; the torsion in degree i + 1 is read from the
    non-unit factors of d_i.
    """
    free: Dict[int, int] = {}
    tors: Dict[int, List[int]] = {}
    ranks: Dict[int, int] = {}
    for i in c.degrees():
        if not c.diff(i).entries:
            continue
        inv = smith_normal_form(c.poly_matrix(i))
        ranks[i] = inv.rank
        ks = []
        for f in inv.torsion():
            k = f.valuation()
            if f.degree != k:
                raise InvariantFailure(f"non-monomial invariant factor {f!r}")
            ks.append(k)
        if ks:
            tors[i + 1] = ks
    for i in c.degrees():
        free[i] = len(c.gens[i]) - ranks.get(i, 0) - ranks.get(i - 1, 0)
    return {i: v for i, v in free.items() if v}, tors


@dataclass
class TorsionProfile:
    deformation: str
    ring: str
    factors: Dict[int, List[int]]          # degree -> exponents k of u^k
    u: int                                 # max torsion order in the variable below
    var: str
    free: Dict[int, int]
    free_gradings: List[Tuple[int, int]] = field(default_factory=list)
    u_X: Optional[int] = None
    u_t: Optional[int] = None
    u_h: Optional[int] = None

    @property
    def pg(self) -> int:
        return self.u + 1

    def to_dict(self) -> dict:
        return {"uX": self.u_X, "ut": self.u_t, "uh": self.u_h, "pg": self.pg}


def _free_gradings(c: GradedComplex) -> List[Tuple[int, int]]:
    """Gradings of a homogeneous basis of the free part (the u-degree 0
    tower generators), read from the page at infinity."""
    pages = _filtered_pages(c, [10 ** 6])
    return sorted(k for k, v in pages[0].items() for _ in range(v))


def _lee_reduced_profile(d: PlanarDiagram, F: Field, **kw) -> Tuple[int, Dict[int, List[int]], Dict[int, int]]:
    c = scan_reduced(d, F, LEE, **kw)
    free, tors = _over_poly_ring(c)
    u = max((k for fs in tors.values() for k in fs), default=0)
    return u, tors, free


def torsion_profile(d: PlanarDiagram, ring=QQ, deformation: str = "auto",
                    max_objects: Optional[int] = None, progress=None,
                    check: bool = True) -> TorsionProfile:
    """Lee (characteristic != 2) or Bar-Natan (characteristic 2) torsion data.

    For Lee the profile's ``u`` is u_t (read off the unreduced complex over
    F[t]) and the reduced complex supplies u_X; the identity
    u_t = ceil(u_X / 2) is checked when ``check`` is set.
    """
    _require_knot(d)
    F = as_field(ring)
    if deformation == "auto":
        deformation = "barnatan" if F.characteristic == 2 else "lee"
    kw = {"max_objects": max_objects, "progress": progress}
    if deformation == "lee":
        if F.characteristic == 2:
            raise ValueError("the Lee deformation needs characteristic != 2")
        c = scan_build(d, F, LEE, **kw)
        free, tors = _over_poly_ring(c)
        u_t = max((k for fs in tors.values() for k in fs), default=0)
        u_x, _, _ = _lee_reduced_profile(d, F, **kw)
        if check and (u_x + 1) // 2 != u_t:
            raise InvariantFailure(f"u_t = {u_t} but ceil(u_X/2) = {(u_x + 1) // 2}")
        prof = TorsionProfile("lee", F.name, tors, u_t, "t", free, u_X=u_x, u_t=u_t)
    elif deformation in ("barnatan", "bn"):
        if F.characteristic != 2:
            raise ValueError("the Bar-Natan deformation is taken over F2")
        c = scan_build(d, F, BAR_NATAN, **kw)
        free, tors = _over_poly_ring(c)
        u_h = max((k for fs in tors.values() for k in fs), default=0)
        prof = TorsionProfile("barnatan", F.name, tors, u_h, "h", free, u_h=u_h)
    else:
        raise ValueError(f"unknown deformation {deformation!r}")
    if check and free != {0: 2}:
        raise InvariantFailure(f"deformed homology has free part {free}, expected rank 2 in degree 0")
    prof.free_gradings = _free_gradings(c)
    return prof


# ---------------------------------------------------------------------------
# spectral sequence of the j-filtration

def _filtered_pages(c: GradedComplex, rs: Sequence[int]) -> List[Grid]:
    """dim E_r^{p} per (homological degree n, filtration p) for each r in rs.

    The filtration is F_p = span of generators with j >= p (the deformed
    differential never lowers j).  With rho_n(a, b) the rank of d_n from
    the span of generators with j >= a to the quotient by j >= b:

        dim E_r^{p,n} = f_n(p) - f_n(p+1) - rho_n(p, p+r) + rho_n(p+1, p+r)
                        + rho_{n-1}(p-r+1, p) - rho_{n-1}(p-r+1, p+1)

    r counts single steps of j; E_1 is the homology of the j-preserving part.
    """
    F = c.field
    cache: Dict[Tuple[int, int, int], int] = {}

    def rho(n: int, a: int, b: int) -> int:
        if b <= a:
            return 0
        key = (n, a, b)
        hit = cache.get(key)
        if hit is not None:
            return hit
        src = c.gens.get(n, [])
        tgt = c.gens.get(n + 1, [])
        cols = [k for k, (j, _) in enumerate(src) if j >= a]
        rows = [k for k, (j, _) in enumerate(tgt) if j < b]
        v = rank(c.diff(n).submatrix(rows, cols), F) if rows and cols and c.diff(n).entries else 0
        cache[key] = v
        return v

    out = []
    for r in rs:
        page: Grid = {}
        for n in c.degrees():
            js = sorted({j for j, _ in c.gens[n]})
            for p in js:
                cnt = sum(1 for j, _ in c.gens[n] if j == p)
                dim = (cnt - rho(n, p, p + r) + rho(n, p + 1, p + r)
                       + rho(n - 1, p - r + 1, p) - rho(n - 1, p - r + 1, p + 1))
                if dim:
                    page[(n, p)] = dim
        out.append(page)
    return out


def _standard_r(kind: str, k: int) -> int:
    return 4 * k - 3 if kind == "lee" else 2 * k - 1


@dataclass
class SpectralPages:
    deformation: str
    ring: str
    pages: List[Grid]          # pages[k-1] is E_k
    infinity: Grid
    collapse: int


def spectral_pages(d: PlanarDiagram, ring=QQ, deformation: str = "auto",
                   max_r: Optional[int] = None, route: str = "cube",
                   cap: int = DEFAULT_CAP, **kw) -> SpectralPages:
    """Rank tables of E_1, E_2, ... of the Lee (or Bar-Natan) spectral
    sequence, from the filtered complex by the rank formula above.

    The default route builds the full cube, which keeps this independent of
    the torsion computation; ``route='scan'`` is available for larger knots.
    """
    F = as_field(ring)
    if deformation == "auto":
        deformation = "barnatan" if F.characteristic == 2 else "lee"
    dfm = {"lee": LEE, "barnatan": BAR_NATAN, "bn": BAR_NATAN}[deformation]
    kind = dfm.kind
    if route == "cube":
        c = simplify(build_full_cube(d, F, dfm, cap=cap))
    else:
        c = scan_build(d, F, dfm, **kw)
    js = [j for g in c.gens.values() for j, _ in g]
    spread = (max(js) - min(js) + 1) if js else 1
    kmax = max_r if max_r is not None else spread // (4 if kind == "lee" else 2) + 2
    rs = [_standard_r(kind, k) for k in range(1, kmax + 1)] + [spread + 1]
    *pages, inf = _filtered_pages(c, rs)
    total_inf = sum(inf.values())
    collapse = None
    for k, pg in enumerate(pages, 1):
        if sum(pg.values()) == total_inf:
            collapse = k
            break
    if collapse is None:
        raise InvariantFailure("the spectral sequence did not settle within max_r pages")
    return SpectralPages(kind, F.name, pages[:collapse], inf, collapse)


def s_invariant(d: PlanarDiagram, ring=QQ, route: str = "auto", cap: int = DEFAULT_CAP) -> int:
    """Rasmussen's s from the two surviving filtration levels of Lee
    homology (Bar-Natan homology over F2)."""
    _require_knot(d)
    F = as_field(ring)
    if route == "auto":
        route = "cube" if d.c <= 10 else "scan"
    sp = spectral_pages(d, F, route=route, cap=cap)
    qs = sorted(q for (n, q), v in sp.infinity.items() for _ in range(v))
    if len(qs) != 2 or any(n != 0 for n, _ in sp.infinity):
        raise InvariantFailure(f"E_infinity is {sp.infinity}, expected two classes in degree 0")
    return (qs[0] + qs[1]) // 2


# ---------------------------------------------------------------------------
# bounds

@dataclass
class Bound:
    value: int
    rule: str


@dataclass
class BoundReport:
    knot: str
    pg_lee: Dict[str, int]
    pg_bn: Optional[int]
    u_x: Dict[str, int]
    width: Dict[str, int]
    alt_lb: Bound
    d_thin_lb: Dict[str, Bound]
    turaev_lb: Bound
    unknotting_lb: Bound
    profiles: Dict[str, TorsionProfile] = field(default_factory=dict)
    tables: Dict[str, HomologyTable] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "knot": self.knot,
            "pg": {**{f"Lee/{r}": v for r, v in self.pg_lee.items()},
                   **({"BN/F2": self.pg_bn} if self.pg_bn is not None else {})},
            "uX": dict(self.u_x),
            "width": dict(self.width),
            "bounds": {
                "alt_lb": self.alt_lb.value,
                "dthin_lb": {r: b.value for r, b in self.d_thin_lb.items()},
                "turaev_lb": self.turaev_lb.value,
                "unknotting_lb": self.unknotting_lb.value,
            },
            "rules": {
                "alt_lb": self.alt_lb.rule,
                "dthin_lb": {r: b.rule for r, b in self.d_thin_lb.items()},
                "turaev_lb": self.turaev_lb.rule,
                "unknotting_lb": self.unknotting_lb.rule,
            },
        }


def _best(cands: List[Tuple[int, str]]) -> Bound:
    v, rule = max(cands, key=lambda t: t[0])
    if v <= 0:
        return Bound(0, "trivial")
    return Bound(v, rule)


def bound_report(d: PlanarDiagram, rings: Sequence = ("Q",), max_objects: Optional[int] = None,
                 progress=None) -> BoundReport:
    """Lower bounds from the collapse pages.

    pg_Lee <= ceil((x + 3) / 2) is equivalent to x >= 2 pg_Lee - 4, and
    pg_BN <= x + 2 to x >= pg_BN - 2; x is d_thin (hence alt) or, with
    2 pg_Lee <= g_T + 4 and pg_BN <= g_T + 2, the Turaev genus.  The width
    bound w <= g_T + 2 adds one more Turaev candidate, and the crossing-change
    inequality for u_X chained down to the unknot gives u >= u_X - 1.
    """
    _require_knot(d)
    pg_lee: Dict[str, int] = {}
    u_x: Dict[str, int] = {}
    width: Dict[str, int] = {}
    dthin: Dict[str, Bound] = {}
    profiles: Dict[str, TorsionProfile] = {}
    tables: Dict[str, HomologyTable] = {}
    pg_bn = None
    alt_c: List[Tuple[int, str]] = [(0, "trivial")]
    tur_c: List[Tuple[int, str]] = [(0, "trivial")]
    unk_c: List[Tuple[int, str]] = [(0, "trivial")]
    for ring in rings:
        F = as_field(ring)
        tab = kh_table(d, F, max_objects=max_objects, progress=progress)
        tables[F.name] = tab
        width[F.name] = tab.width
        tur_c.append((tab.width - 2, f"w(Kh;{F.name}) - 2"))
        prof = torsion_profile(d, F, max_objects=max_objects, progress=progress)
        profiles[F.name] = prof
        if F.characteristic == 2:
            pg_bn = prof.pg
            v = prof.pg - 2
            dthin[F.name] = _best([(v, "pg_BN - 2")])
            alt_c.append((v, "pg_BN - 2 (F2)"))
            tur_c.append((v, "pg_BN - 2"))
        else:
            pg_lee[F.name] = prof.pg
            u_x[F.name] = prof.u_X
            v = 2 * prof.pg - 4
            dthin[F.name] = _best([(v, f"2 pg_Lee({F.name}) - 4")])
            alt_c.append((v, f"2 pg_Lee({F.name}) - 4"))
            tur_c.append((v, f"2 pg_Lee({F.name}) - 4"))
            unk_c.append((prof.u_X - 1, f"u_X({F.name}) - 1"))
    return BoundReport(d.name, pg_lee, pg_bn, u_x, width, _best(alt_c), dthin,
                       _best(tur_c), _best(unk_c), profiles, tables)


def report_json(table: Optional[HomologyTable], profile: Optional[TorsionProfile] = None,
                bounds: Optional[BoundReport] = None) -> str:
    """Document in the layout
    {knot, ring, ranks: [{i, j, rank}], width, thin, torsion: {uX, ut, uh, pg},
     bounds: {alt_lb, dthin_lb, turaev_lb, unknotting_lb}}."""
    doc: dict = table.to_dict() if table is not None else {}
    if profile is not None:
        doc["torsion"] = profile.to_dict()
    if bounds is not None:
        b = bounds.to_dict()
        doc.setdefault("knot", b["knot"])
        doc["bounds"] = b["bounds"]
        doc["rules"] = b["rules"]
        doc["pg"] = b["pg"]
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# F2 splitting

def f2_splitting(table: HomologyTable) -> Optional[Grid]:
    """Nonnegative r(i, j) with rank(i, j) = r(i, j-1) + r(i, j+1), or None.

    Per homological degree the equations form a chain in j, so the solution
    is forced from the top j downward; it exists iff every forced value is
    nonnegative and the chain closes at the bottom.
    """
    # the equations only link j of one parity, so each (i, j mod 2) is a chain
    chains: Dict[Tuple[int, int], Dict[int, int]] = {}
    for (i, j), v in table.ranks.items():
        chains.setdefault((i, j % 2), {})[j] = v
    out: Grid = {}
    for (i, _), col in chains.items():
        js = sorted(col, reverse=True)
        hi, lo = js[0], js[-1]
        r: Dict[int, int] = {}
        # from the top: r(hi+1) = 0, then r(j-1) = rank(j) - r(j+1)
        for j in range(hi, lo - 1, -2):
            v = col.get(j, 0) - r.get(j + 1, 0)
            if v < 0:
                return None
            if v:
                r[j - 1] = v
        for jj, v in r.items():
            out[(i, jj)] = v
    # final check of every equation
    keys = set(table.ranks) | {(i, j + 1) for i, j in out} | {(i, j - 1) for i, j in out}
    for i, j in keys:
        if table.rank(i, j) != out.get((i, j - 1), 0) + out.get((i, j + 1), 0):
            return None
    return out


def f2_splitting_check(table: HomologyTable) -> bool:
    return f2_splitting(table) is not None
