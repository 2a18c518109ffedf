"""The full cube of resolutions.  Exponential in the crossing number; this is
the reference construction the faster scan is checked against."""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..algebra.fields import Field
from ..algebra.matrix import SparseMatrix
from ..diagram import PlanarDiagram, crossing_signs, smoothing_pairs
from .graded import NONE, Deformation, GradedComplex

DEFAULT_CAP = 14


class CubeTooLarge(RuntimeError):
    pass


def _circles(d: PlanarDiagram, v: int) -> Tuple[Dict[int, int], int]:
    """arc -> circle index for resolution v; circles numbered by least arc."""
    parent = list(range(d.arc_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, x in enumerate(d.crossings):
        for p, q in smoothing_pairs(x, (v >> k) & 1):
            rp, rq = find(p), find(q)
            if rp != rq:
                parent[rp] = rq
    first: Dict[int, int] = {}
    arc2c: Dict[int, int] = {}
    for a in range(1, d.arc_count + 1):
        r = find(a)
        if r not in first:
            first[r] = len(first)
        arc2c[a] = first[r]
    return arc2c, len(first)


def build_full_cube(d: PlanarDiagram, F: Field, deformation: Deformation = NONE,
                    sys=None, cap: int = DEFAULT_CAP) -> GradedComplex:
    """Khovanov complex (optionally Lee / Bar-Natan deformed) from the cube.

    Generators of a resolution are sign vectors on its circles (bit set =
    X, the q-lowering generator).  Gradings are already normalised:
    i = |v| - n_-, j = (#1 - #X) + |v| + n_+ - 2 n_-.  The edge for changing
    crossing k carries the sign (-1)^(number of 1s of v before k).

    ``sys`` may be a rank-2 FrobeniusSystem; it only has to be compatible with
    the deformation (the complex uses the specialised h, t of the deformation).
    """
    n = d.c
    if n > cap:
        raise CubeTooLarge(f"{n} crossings exceeds the full-cube cap of {cap}")
    if sys is not None and sys.n != 2:
        raise ValueError("the Khovanov cube needs a rank-2 Frobenius system")
    h, t = deformation.h, deformation.t
    signs = crossing_signs(d)
    npos = sum(1 for s in signs if s > 0)
    nneg = n - npos
    if n == 0:
        gens = {0: [(1, "+"), (-1, "-")]}
        return GradedComplex(F, deformation, gens, {}, {"route": "cube"})

    res = [_circles(d, v) for v in range(1 << n)]
    # generator index per (v, sign vector)
    gens: Dict[int, List[Tuple[int, str]]] = {}
    index: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for v in range(1 << n):
        ones = bin(v).count("1")
        i = ones - nneg
        nc = res[v][1]
        lst = gens.setdefault(i, [])
        for s in range(1 << nc):
            minus = bin(s).count("1")
            j = nc - 2 * minus + ones + npos - 2 * nneg
            index[(v, s)] = (i, len(lst))
            lst.append((j, f"{v:0{n}b}:{s:0{nc}b}"))

    ents: Dict[int, Dict[Tuple[int, int], int]] = {}
    for v in range(1 << n):
        a2c, nc = res[v]
        for k in range(n):
            if (v >> k) & 1:
                continue
            w = v | (1 << k)
            b2c, nw = res[w]
            sign = -1 if bin(v & ((1 << k) - 1)).count("1") % 2 else 1
            # circle correspondence through arcs
            src_of: Dict[int, set] = {}
            for a in range(1, d.arc_count + 1):
                src_of.setdefault(b2c[a], set()).add(a2c[a])
            tgt_of: Dict[int, set] = {}
            for a in range(1, d.arc_count + 1):
                tgt_of.setdefault(a2c[a], set()).add(b2c[a])
            i = bin(v).count("1") - nneg
            block = ents.setdefault(i, {})
            if nw == nc - 1:
                # merge: two source circles -> one target circle
                m = next(c for c, ss in src_of.items() if len(ss) == 2)
                c1, c2 = sorted(src_of[m])
                others = [(next(iter(src_of[c])), c) for c in range(nw) if c != m]
                for s in range(1 << nc):
                    base = 0
                    for sc, tc in others:
                        if (s >> sc) & 1:
                            base |= 1 << tc
                    x1, x2 = (s >> c1) & 1, (s >> c2) & 1
                    terms = []
                    if x1 + x2 == 0:
                        terms = [(0, 1)]
                    elif x1 + x2 == 1:
                        terms = [(1, 1)]
                    else:
                        # X * X = h X + t
                        if h:
                            terms.append((1, h))
                        if t:
                            terms.append((0, t))
                    col = index[(v, s)][1]
                    for bit, coef in terms:
                        row = index[(w, base | (bit << m))][1]
                        block[(row, col)] = block.get((row, col), 0) + sign * coef
            elif nw == nc + 1:
                sp = next(c for c, tt in tgt_of.items() if len(tt) == 2)
                c1, c2 = sorted(tgt_of[sp])
                others = [(c, next(iter(tgt_of[c]))) for c in range(nc) if c != sp]
                for s in range(1 << nc):
                    base = 0
                    for sc, tc in others:
                        if (s >> sc) & 1:
                            base |= 1 << tc
                    x = (s >> sp) & 1
                    if x == 0:
                        # 1 -> 1 (x) X + X (x) 1 - h 1 (x) 1
                        terms = [((0, 1), 1), ((1, 0), 1)]
                        if h:
                            terms.append(((0, 0), -h))
                    else:
                        # X -> X (x) X + t 1 (x) 1
                        terms = [((1, 1), 1)]
                        if t:
                            terms.append(((0, 0), t))
                    col = index[(v, s)][1]
                    for (b1, b2), coef in terms:
                        row = index[(w, base | (b1 << c1) | (b2 << c2))][1]
                        block[(row, col)] = block.get((row, col), 0) + sign * coef
            else:
                raise AssertionError("edge neither merges nor splits")
    d_ = {}
    for i, e in ents.items():
        d_[i] = SparseMatrix(len(gens.get(i + 1, [])), len(gens[i]),
                             {k: F(v) for k, v in e.items()}, F)
    return GradedComplex(F, deformation, gens, d_, {"route": "cube"})
