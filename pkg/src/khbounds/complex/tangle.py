"""Crossing-by-crossing construction of the Khovanov complex.

The diagram is cut open and rebuilt one crossing at a time.  The partial
result is a complex over the dotted cobordism category of the current
boundary points:

* an object is a crossingless matching of the boundary (closed circles are
  removed by delooping as soon as they appear), with a homological degree
  and a quantum shift;
* a morphism between matchings M1 -> M2 is a linear combination of dotted
  cobordisms in normal form: one disk for each loop of M1 u M2, each with 0
  or 1 dot.  It is stored as {dotmask: coeff}, bit k meaning loop k (loops
  ordered by their least boundary point) carries a dot.

Composition and horizontal gluing both reduce to evaluating a surface glued
from such disks: per connected component, with b boundary loops, d dots and
genus g, the value is Delta^(b)(X^d H^g) written in the basis {1, X} of
each boundary loop (H = 2X - h is the handle).  Only the specialised
scalars h, t in {0, 1} are stored; the power of the deformation parameter in
any term is forced by the quantum gradings, so nothing is lost.

After each crossing every isomorphism (same matching, same quantum shift,
invertible identity coefficient) is cancelled by Gaussian elimination.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..algebra.fields import Field
from ..diagram import PlanarDiagram, crossing_signs
from .graded import NONE, Deformation, GradedComplex

Matching = Tuple[Tuple[int, int], ...]


class ResourceCapExceeded(RuntimeError):
    def __init__(self, msg, state=None):
        super().__init__(msg)
        self.state = state or {}


# ---------------------------------------------------------------------------
# matchings

def norm_matching(pairs) -> Matching:
    return tuple(sorted((min(p), max(p)) for p in pairs))


@lru_cache(maxsize=1 << 18)
def partner(M: Matching) -> Dict[int, int]:
    out = {}
    for p, q in M:
        out[p] = q
        out[q] = p
    return out


@lru_cache(maxsize=1 << 18)
def loops(M1: Matching, M2: Matching) -> Tuple[Tuple[Tuple[int, ...], ...], Dict[int, int]]:
    """Loops of M1 u M2 (same point set), ordered by least point, and a
    point -> loop index map."""
    p1, p2 = partner(M1), partner(M2)
    seen: Dict[int, int] = {}
    out = []
    for start in sorted(p1):
        if start in seen:
            continue
        k = len(out)
        pts = []
        p = start
        while True:
            seen[p] = k
            pts.append(p)
            q = p1[p]
            seen[q] = k
            pts.append(q)
            p = p2[q]
            if p == start:
                break
        out.append(tuple(pts))
    return tuple(out), seen


@lru_cache(maxsize=1 << 18)
def glue_matchings(M: Matching, S: Matching):
    """Join two matchings along their common points.

    Returns (N, circles): N the matching on the symmetric difference of the
    point sets, circles a tuple of closed loops (as sorted point tuples,
    ordered by least point).
    """
    pm, ps = partner(M), partner(S)
    shared = set(pm) & set(ps)
    ends = sorted((set(pm) | set(ps)) - shared)
    used = set()
    arcs = []
    for e in ends:
        if e in used:
            continue
        # walk from e; alternate between the two matchings
        p = e
        side = pm if p in pm else ps
        while True:
            used.add(p)
            q = side[p]
            used.add(q)
            if q not in shared:
                break
            side = ps if side is pm else pm
            p = q
        arcs.append((e, q))
    circles = []
    for s in sorted(shared):
        if s in used:
            continue
        pts = []
        p = s
        side = pm
        while True:
            used.add(p)
            pts.append(p)
            q = side[p]
            used.add(q)
            pts.append(q)
            p = (ps if side is pm else pm)[q]
            if p == s:
                break
        circles.append(tuple(sorted(set(pts))))
    circles.sort()
    return norm_matching(arcs), tuple(circles)


def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


# ---------------------------------------------------------------------------
# surface evaluation

class Cobordisms:
    """Evaluator for the rank-2 algebra X^2 = hX + t with scalar h, t."""

    def __init__(self, h: int, t: int):
        self.h, self.t = h, t
        self._exp: Dict[Tuple[int, int, int], Tuple[Tuple[int, int], ...]] = {}
        self._comp_struct: Dict = {}
        self._glue_struct: Dict = {}
        self._comp_val: Dict = {}
        self._glue_val: Dict = {}

    # element of A as (alpha, beta) meaning alpha + beta X
    def _times_x(self, a):
        al, be = a
        return (be * self.t, al + be * self.h)

    def _mul(self, a, b):
        al, be = a
        x = self._times_x(b)
        return (al * b[0] + be * x[0], al * b[1] + be * x[1])

    def expand(self, b: int, d: int, g: int):
        """Delta^(b)(X^d H^g) as ((mask over b factors, coeff), ...);
        for b = 0 the single term (0, eps(X^d H^g))."""
        key = (b, d, g)
        hit = self._exp.get(key)
        if hit is not None:
            return hit
        a = (1, 0)
        for _ in range(d):
            a = self._times_x(a)
        H = (-self.h, 2)
        for _ in range(g):
            a = self._mul(a, H)
        if b == 0:
            res = ((0, a[1]),) if a[1] else ()
        else:
            cur = {}
            if a[0]:
                cur[0] = a[0]
            if a[1]:
                cur[1] = a[1]
            for k in range(1, b):
                # comultiply factor k-1 into factors k-1, k
                nxt: Dict[int, int] = {}
                bit_prev = 1 << (k - 1)
                bit_new = 1 << k
                for m, c in cur.items():
                    base = m & ~bit_prev
                    if m & bit_prev:
                        # X -> X (x) X + t 1 (x) 1
                        terms = [(bit_prev | bit_new, 1)]
                        if self.t:
                            terms.append((0, self.t))
                    else:
                        # 1 -> 1 (x) X + X (x) 1 - h 1 (x) 1
                        terms = [(bit_new, 1), (bit_prev, 1)]
                        if self.h:
                            terms.append((0, -self.h))
                    for mm, cc in terms:
                        key2 = base | mm
                        nxt[key2] = nxt.get(key2, 0) + c * cc
                cur = {m: c for m, c in nxt.items() if c}
            res = tuple(sorted(cur.items()))
        self._exp[key] = res
        return res

    # -- structure of a glued surface
    @staticmethod
    def _components(npieces, unions, res_loops_pieces):
        parent = list(range(npieces))
        for x, y in unions:
            rx, ry = _uf_find(parent, x), _uf_find(parent, y)
            if rx != ry:
                parent[rx] = ry
        comps: Dict[int, list] = {}
        for k in range(npieces):
            comps.setdefault(_uf_find(parent, k), [[], 0, []])[0].append(k)
        for x, _ in unions:
            comps[_uf_find(parent, x)][1] += 1
        for idx, piece in enumerate(res_loops_pieces):
            comps[_uf_find(parent, piece)][2].append(idx)
        return list(comps.values())

    @staticmethod
    def _finish(comps, na):
        out = []
        for pieces, nglue, res in comps:
            chi = len(pieces) - nglue
            b = len(res)
            twice_g = 2 - chi - b
            if twice_g < 0 or twice_g % 2:
                raise AssertionError("non-orientable or disconnected piece count")
            fmask = sum(1 << k for k in pieces if k < na)
            gmask = sum(1 << (k - na) for k in pieces if k >= na)
            out.append((fmask, gmask, twice_g // 2, tuple(res)))
        return tuple(out)

    def compose_struct(self, M1: Matching, M2: Matching, M3: Matching):
        key = (M1, M2, M3)
        s = self._comp_struct.get(key)
        if s is not None:
            return s
        L12, pl12 = loops(M1, M2)
        L23, pl23 = loops(M2, M3)
        L13, _ = loops(M1, M3)
        na = len(L12)
        unions = [(pl12[p], na + pl23[p]) for p, q in M2]
        res_pieces = [pl12[lp[0]] for lp in L13]
        comps = self._components(na + len(L23), unions, res_pieces)
        s = self._finish(comps, na)
        self._comp_struct[key] = s
        return s

    def glue_struct(self, M1: Matching, M2: Matching, S1: Matching, S2: Matching):
        """f: M1 -> M2 next to g: S1 -> S2, glued along common points."""
        key = (M1, M2, S1, S2)
        s = self._glue_struct.get(key)
        if s is not None:
            return s
        Lf, plf = loops(M1, M2)
        Lg, plg = loops(S1, S2)
        na = len(Lf)
        ptsM = partner(M1)
        shared = [p for p in partner(S1) if p in ptsM]
        unions = [(plf[p], na + plg[p]) for p in shared]
        N1, C1 = glue_matchings(M1, S1)
        N2, C2 = glue_matchings(M2, S2)
        LN, _ = loops(N1, N2)

        def piece(p):
            return plf[p] if p in ptsM else na + plg[p]

        res_pieces = [piece(lp[0]) for lp in LN] + [plf[c[0]] for c in C1] + [plf[c[0]] for c in C2]
        comps = self._components(na + len(Lg), unions, res_pieces)
        s = (self._finish(comps, na), N1, C1, N2, C2, len(LN))
        self._glue_struct[key] = s
        return s

    def _evaluate(self, comps, mf: int, mg: int):
        acc = {0: 1}
        for fmask, gmask, genus, res in comps:
            dots = bin(mf & fmask).count("1") + bin(mg & gmask).count("1")
            terms = self.expand(len(res), dots, genus)
            if not terms:
                return {}
            if not res:
                c0 = terms[0][1]
                acc = {m: c * c0 for m, c in acc.items()}
                continue
            new = {}
            for m, c in acc.items():
                for em, ec in terms:
                    mm = m
                    k = 0
                    while em:
                        if em & 1:
                            mm |= 1 << res[k]
                        em >>= 1
                        k += 1
                    new[mm] = new.get(mm, 0) + c * ec
            acc = new
        return {m: c for m, c in acc.items() if c}

    def compose(self, M1, M2, M3, mf: int, mg: int):
        key = (M1, M2, M3, mf, mg)
        v = self._comp_val.get(key)
        if v is None:
            v = self._evaluate(self.compose_struct(M1, M2, M3), mf, mg)
            self._comp_val[key] = v
        return v

    def glue(self, M1, M2, S1, S2, mf: int, mg: int):
        key = (M1, M2, S1, S2, mf, mg)
        v = self._glue_val.get(key)
        if v is None:
            st = self.glue_struct(M1, M2, S1, S2)
            raw = self._evaluate(st[0], mf, mg)
            v = self._deloop_split(raw, st[5], len(st[2]), len(st[4]))
            self._glue_val[key] = v
        return v

    def _deloop_split(self, raw, nL, n1, n2):
        """Compose with the delooping isomorphisms on new circles.

        Target circle with dot e: e = 0 lands in the + object (the 1
        generator), e = 1 in the - object (X).  Source circle (a cap with e
        dots, the functional eps(X^e .)): from + it reads eps(X^e), from -
        eps(X^{e+1}); i.e. + keeps e = 1 terms, - keeps e = 0 terms and
        e = 1 terms times h.
        Returns {(sigma_src, sigma_tgt): {loopmask: coeff}} with bit = 1
        meaning the - object.
        """
        out: Dict[Tuple[int, int], Dict[int, int]] = {}
        lmask_all = (1 << nL) - 1
        m1 = (1 << n1) - 1
        h = self.h
        for m, c in raw.items():
            lm = m & lmask_all
            e1 = (m >> nL) & m1
            tau = m >> (nL + n1)
            options = [(0, c)]
            for k in range(n1):
                bit = 1 << k
                nxt = []
                if (e1 >> k) & 1:
                    for s, cc in options:
                        nxt.append((s, cc))               # + object
                        if h:
                            nxt.append((s | bit, cc * h))  # - object
                else:
                    for s, cc in options:
                        nxt.append((s | bit, cc))
                options = nxt
            for s, cc in options:
                dct = out.setdefault((s, tau), {})
                dct[lm] = dct.get(lm, 0) + cc
        return {k: {m: c for m, c in v.items() if c} for k, v in out.items()
                if any(v.values())}


# ---------------------------------------------------------------------------
# the complex being scanned

class TangleComplex:
    """Objects are ids -> [matching, hdeg, q]; out[id][id2] is a morphism."""

    def __init__(self, F: Field, cob: Cobordisms):
        self.F = F
        self.cob = cob
        self.obj: Dict[int, Tuple[Matching, int, int]] = {}
        self.out: Dict[int, Dict[int, Dict[int, object]]] = {}
        self.inn: Dict[int, set] = {}
        self._next = 0

    def add(self, M, hd, q) -> int:
        k = self._next
        self._next += 1
        self.obj[k] = (M, hd, q)
        self.out[k] = {}
        self.inn[k] = set()
        return k

    def set_entry(self, s, t, morph):
        if morph:
            self.out[s][t] = morph
            self.inn[t].add(s)

    def entries(self) -> int:
        return sum(len(o) for o in self.out.values())

    # -- Gaussian elimination
    def is_iso(self, s, t) -> bool:
        Ms, hs, qs = self.obj[s]
        Mt, ht, qt = self.obj[t]
        if Ms != Mt or qs != qt:
            return False
        c = self.out[s][t].get(0, 0)
        return c != 0

    def cancel(self, b, c_):
        """Remove b -> c_ (an isomorphism c0 * id) by Gaussian elimination."""
        F = self.F
        cob = self.cob
        phi = self.out[b][c_]
        c0 = phi.get(0, 0)
        if c0 == 0 or len(phi) != 1:
            raise ValueError("not an isomorphism")
        inv = F.inv(c0)
        Mc = self.obj[c_][0]
        gam = [(y, g) for y, g in self.out[b].items() if y != c_]
        for x in list(self.inn[c_]):
            if x == b:
                continue
            delta = self.out[x][c_]
            Mx = self.obj[x][0]
            ox = self.out[x]
            for y, g in gam:
                My = self.obj[y][0]
                acc = dict(ox.get(y, {}))
                for m1, a1 in delta.items():
                    for m2, a2 in g.items():
                        comp = cob.compose(Mx, Mc, My, m1, m2)
                        if not comp:
                            continue
                        f = -a1 * a2 * inv
                        for m, v in comp.items():
                            acc[m] = acc.get(m, 0) + f * v
                acc = {m: F(v) for m, v in acc.items()}
                acc = {m: v for m, v in acc.items() if v != 0}
                if acc:
                    if y not in ox:
                        self.inn[y].add(x)
                    ox[y] = acc
                elif y in ox:
                    del ox[y]
                    self.inn[y].discard(x)
        for z in (b, c_):
            for y in self.out[z]:
                self.inn[y].discard(z)
            for x in self.inn[z]:
                self.out[x].pop(z, None)
            del self.out[z], self.inn[z], self.obj[z]

    def reduce(self, candidates=None):
        import heapq
        heap = []
        src = candidates if candidates is not None else list(self.out)
        for s in src:
            if s not in self.out:
                continue
            for t in self.out[s]:
                if self.is_iso(s, t):
                    heap.append(((len(self.inn[t]) - 1) * (len(self.out[s]) - 1), s, t))
        heapq.heapify(heap)
        n = 0
        while heap:
            cost, s, t = heapq.heappop(heap)
            if s not in self.out or t not in self.out[s] or not self.is_iso(s, t):
                continue
            now = (len(self.inn[t]) - 1) * (len(self.out[s]) - 1)
            if now > cost:
                heapq.heappush(heap, (now, s, t))
                continue
            touched = [x for x in self.inn[t] if x != s]
            self.cancel(s, t)
            n += 1
            for x in touched:
                if x not in self.out:
                    continue
                for y in self.out[x]:
                    if self.is_iso(x, y):
                        heapq.heappush(heap, ((len(self.inn[y]) - 1) * (len(self.out[x]) - 1), x, y))
        return n


def deloop(sys, circles: int = 1):
    """Delooping data for closed circles over a Frobenius system.

    Returns one (q_shift, psi, phi) triple per shifted empty object, psi the
    element the cup lands on and phi the element w with phi(a) = eps(w a).
    For rank 2 the objects sit at q + 1 (psi = 1) and q - 1 (psi = X).  For
    several circles the result is the list of tuples of per-circle triples.
    The scan applies the rank-2 maps inside Cobordisms.glue whenever gluing
    closes up a circle.
    """
    from itertools import product
    from ..frobenius import deloop_maps
    if circles < 1:
        raise ValueError("no circle at this site")
    phi, psi = deloop_maps(sys)
    single = [(sys.n - 1 - 2 * i, psi[i], phi[i]) for i in range(sys.n)]
    if circles == 1:
        return single
    return list(product(single, repeat=circles))


# ---------------------------------------------------------------------------
# driver

def scan_order(crossings: Sequence[Tuple[int, int, int, int]], first: int = 0) -> List[int]:
    """Greedy order keeping the open boundary small; ties go to the crossing
    sharing more arcs with the boundary, then to the lower index."""
    n = len(crossings)
    if n == 0:
        return []
    order = [first]
    boundary: Dict[int, int] = {}

    def add(k):
        for a in crossings[k]:
            if a in boundary:
                del boundary[a]
            else:
                boundary[a] = 1

    add(first)
    left = set(range(n)) - {first}
    while left:
        best = None
        for k in sorted(left):
            shared = sum(1 for a in set(crossings[k]) if a in boundary)
            size = len(boundary) + 4 - 2 * shared
            key = (size, -shared, k)
            if best is None or key < best:
                best = key
        k = best[2]
        order.append(k)
        add(k)
        left.discard(k)
    return order


def _default_progress(state: dict) -> None:
    print("[scan] crossing {step}/{total}  objects {objects}  entries {entries}  "
          "boundary {boundary}  {elapsed:.1f}s".format(**state), file=sys.stderr, flush=True)


def scan_tangle(d: PlanarDiagram, F: Field, deformation: Deformation = NONE,
                pointed: bool = True, max_objects: Optional[int] = None,
                progress: Optional[Callable[[dict], None]] = None,
                order: Optional[Sequence[int]] = None) -> Tuple[TangleComplex, Matching]:
    """Run the scan; returns the final complex and the final boundary
    matching (empty, or a single arc when pointed)."""
    h, t = deformation.h, deformation.t
    cob = Cobordisms(h, t)
    tc = TangleComplex(F, cob)
    cr = [tuple(x) for x in d.crossings]
    if pointed:
        # cut arc 1 open: its second occurrence gets a fresh label
        fresh = max(max(x) for x in cr) + 1
        done = False
        for k in range(len(cr) - 1, -1, -1):
            x = list(cr[k])
            for s in range(3, -1, -1):
                if x[s] == 1:
                    x[s] = fresh
                    done = True
                    break
            cr[k] = tuple(x)
            if done:
                break
    # an arc with both ends on one crossing is subdivided; the extra piece
    # starts out as a plain strand in the initial object
    nxt = max((max(x) for x in cr), default=0) + 1
    extra = []
    for k, x in enumerate(cr):
        x = list(x)
        for s in range(4):
            if x[s] in x[:s]:
                extra.append((x[s], nxt))
                x[s] = nxt
                nxt += 1
        cr[k] = tuple(x)
    tc.add(norm_matching(extra), 0, 0)
    seq = list(order) if order is not None else scan_order(cr)
    boundary = {p for pr in extra for p in pr}
    t0 = time.time()
    for step, k in enumerate(seq, 1):
        a, b, c, dd = cr[k]
        S0 = norm_matching(((a, b), (c, dd)))
        S1 = norm_matching(((a, dd), (b, c)))
        _tensor_crossing(tc, S0, S1)
        for x in (a, b, c, dd):
            boundary ^= {x}
        tc.reduce()
        state = {"step": step, "total": len(seq), "objects": len(tc.obj),
                 "entries": tc.entries(), "boundary": len(boundary),
                 "elapsed": time.time() - t0}
        if progress is not None:
            progress(state)
        if max_objects is not None and len(tc.obj) > max_objects:
            raise ResourceCapExceeded(
                f"{len(tc.obj)} objects alive after crossing {step}/{len(seq)} "
                f"(cap {max_objects})", state)
    final = norm_matching([tuple(sorted(boundary))]) if boundary else ()
    return tc, final


def _tensor_crossing(tc: TangleComplex, S0: Matching, S1: Matching) -> None:
    cob = tc.cob
    F = tc.F
    old_obj = dict(tc.obj)
    old_out = {k: dict(v) for k, v in tc.out.items()}
    tc.obj.clear()
    tc.out.clear()
    tc.inn.clear()
    new_ids: Dict[Tuple[int, int], List[int]] = {}
    for o, (M, hd, q) in old_obj.items():
        for eps, S in ((0, S0), (1, S1)):
            N, circ = glue_matchings(M, S)
            nc = len(circ)
            ids = []
            for sig in range(1 << nc):
                ids.append(tc.add(N, hd + eps, q + eps + nc - 2 * bin(sig).count("1")))
            new_ids[(o, eps)] = ids

    def put(s, t, lm_dict, sign):
        cur = tc.out[s].get(t)
        if cur is None:
            cur = {}
        for m, v in lm_dict.items():
            cur[m] = cur.get(m, 0) + sign * v
        cur = {m: F(v) for m, v in cur.items()}
        cur = {m: v for m, v in cur.items() if v != 0}
        if cur:
            tc.out[s][t] = cur
            tc.inn[t].add(s)
        elif t in tc.out[s]:
            del tc.out[s][t]
            tc.inn[t].discard(s)

    # d_T (x) id
    for o, targets in old_out.items():
        Mo = old_obj[o][0]
        for o2, f in targets.items():
            Mo2 = old_obj[o2][0]
            for eps, S in ((0, S0), (1, S1)):
                src_ids = new_ids[(o, eps)]
                tgt_ids = new_ids[(o2, eps)]
                acc: Dict[Tuple[int, int], Dict[int, object]] = {}
                for mf, c in f.items():
                    for (ss, tt), lm in cob.glue(Mo, Mo2, S, S, mf, 0).items():
                        slot = acc.setdefault((ss, tt), {})
                        for m, v in lm.items():
                            slot[m] = slot.get(m, 0) + c * v
                for (ss, tt), lm in acc.items():
                    put(src_ids[ss], tgt_ids[tt], lm, 1)
    # (-1)^hdeg id (x) saddle
    for o, (M, hd, q) in old_obj.items():
        sign = -1 if hd % 2 else 1
        src_ids = new_ids[(o, 0)]
        tgt_ids = new_ids[(o, 1)]
        for (ss, tt), lm in cob.glue(M, M, S0, S1, 0, 0).items():
            put(src_ids[ss], tgt_ids[tt], lm, sign)


def _shifts(d: PlanarDiagram) -> Tuple[int, int]:
    signs = crossing_signs(d)
    npos = sum(1 for s in signs if s > 0)
    return npos, len(signs) - npos


def _to_graded(tc: TangleComplex, F: Field, deformation: Deformation, npos: int, nneg: int,
               close: bool, arc: Matching) -> GradedComplex:
    """Final complex to a GradedComplex.  With ``close`` the arc objects of a
    pointed scan become circles, delooped into + (q+1) and - (q-1); the map
    a + bX on the arc becomes multiplication by a + bX on A:
        + -> + : a        + -> - : b
        - -> + : b t      - -> - : a + b h
    """
    h, t = deformation.h, deformation.t
    gens: Dict[int, List[Tuple[int, str]]] = {}
    where: Dict[Tuple[int, int], Tuple[int, int]] = {}
    ids = sorted(tc.obj, key=lambda k: (tc.obj[k][1], tc.obj[k][2], k))
    for k in ids:
        M, hd, q = tc.obj[k]
        i = hd - nneg
        j = q + npos - 2 * nneg
        lst = gens.setdefault(i, [])
        if close and arc:
            where[(k, 0)] = (i, len(lst))
            lst.append((j + 1, f"g{k}+"))
            where[(k, 1)] = (i, len(lst))
            lst.append((j - 1, f"g{k}-"))
        else:
            where[(k, 0)] = (i, len(lst))
            lst.append((j, f"g{k}"))
    ents: Dict[int, Dict[Tuple[int, int], object]] = {}

    def add(src, tgt, v):
        if v == 0:
            return
        i, col = where[src]
        _, row = where[tgt]
        blk = ents.setdefault(i, {})
        blk[(row, col)] = F(blk.get((row, col), 0) + v)

    for s, outs in tc.out.items():
        for t_, f in outs.items():
            a = f.get(0, 0)
            b = f.get(1, 0) if arc else 0
            if close and arc:
                add((s, 0), (t_, 0), a)
                add((s, 0), (t_, 1), b)
                add((s, 1), (t_, 0), b * t)
                add((s, 1), (t_, 1), a + b * h)
            else:
                add((s, 0), (t_, 0), a + b)
    from ..algebra.matrix import SparseMatrix
    d_ = {i: SparseMatrix(len(gens.get(i + 1, [])), len(gens[i]),
                          {k: v for k, v in e.items() if v != 0}, F)
          for i, e in ents.items()}
    return GradedComplex(F, deformation, gens, d_)


def scan_build(d: PlanarDiagram, F: Field, deformation: Deformation = NONE,
               max_objects: Optional[int] = None,
               progress: Optional[Callable[[dict], None]] = None,
               simplify_result: bool = True) -> GradedComplex:
    """Unreduced (possibly deformed) Khovanov complex via the scan.

    The knot is cut at one arc, scanned as a (1,1)-tangle, and closed up at
    the end; the closing creates the only remaining circle.  The result is
    homotopy equivalent over F[u] to the full cube.
    """
    from .graded import simplify
    npos, nneg = _shifts(d)
    if d.c == 0:
        gens = {0: [(1, "+"), (-1, "-")]}
        return GradedComplex(F, deformation, gens, {}, {"route": "scan"})
    tc, arc = scan_tangle(d, F, deformation, pointed=True, max_objects=max_objects,
                          progress=progress)
    g = _to_graded(tc, F, deformation, npos, nneg, close=True, arc=arc)
    g.meta["route"] = "scan"
    g.meta["tangle_objects"] = len(tc.obj)
    return simplify(g) if simplify_result else g


def scan_reduced(d: PlanarDiagram, F: Field, deformation: Deformation = NONE,
                 max_objects: Optional[int] = None,
                 progress: Optional[Callable[[dict], None]] = None) -> GradedComplex:
    """The pointed complex: a complex of free A-modules where A = F[X] when
    t = X^2 (Lee) or A = F (undeformed, X acting by zero).

    Lee: returns a complex over F[X] (deformation LEE_REDUCED, step 2): the
    entry a + bX between generators at j1, j2 means a X^((j2-j1)/2) when
    4 | j2 - j1 and b X^((j2-j1)/2) otherwise.
    Undeformed: the reduced Khovanov complex (X = 0), arc at quantum degree 0.
    """
    from .graded import LEE_REDUCED, simplify
    npos, nneg = _shifts(d)
    if deformation.kind == "lee":
        out_def = LEE_REDUCED
    elif deformation.kind == "none":
        out_def = NONE
    else:
        raise ValueError("reduced scan supports the undeformed and Lee complexes")
    if d.c == 0:
        return GradedComplex(F, out_def, {0: [(0, "arc")]}, {}, {"route": "scan-reduced"})
    tc, arc = scan_tangle(d, F, deformation, pointed=True, max_objects=max_objects,
                          progress=progress)
    if deformation.kind == "none":
        # X acts by zero: drop the dotted part
        for s in tc.out:
            for t_ in list(tc.out[s]):
                f = tc.out[s][t_]
                if 1 in f:
                    f = {m: v for m, v in f.items() if m == 0}
                    if f:
                        tc.out[s][t_] = f
                    else:
                        del tc.out[s][t_]
                        tc.inn[t_].discard(s)
    g = _to_graded(tc, F, out_def, npos, nneg, close=False, arc=arc)
    g.meta["route"] = "scan-reduced"
    return simplify(g)
