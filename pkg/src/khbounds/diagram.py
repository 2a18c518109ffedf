"""Planar diagram codes: parsing, orientation, Kauffman states, generators.

PD convention: each crossing X(a,b,c,d) lists its four arcs counterclockwise,
starting from the incoming under-strand.  So the under-strand runs a -> c and
the over-strand joins b and d.  The crossing is positive when the over-strand
runs d -> b:

        b                   d
        ^                   |
    c <-|-- a  (under)  c <-|-- a
        |                   v
        d                   b
    positive            negative

For a knot numbered consecutively along its orientation this is the usual
rule ``(b - d) % 2n == 1``; in general the direction of each arc is found by
propagating from the under-strands.

Smoothing 0 (the A-smoothing) joins a-b and c-d; smoothing 1 (B) joins a-d
and b-c.  At a positive crossing smoothing 0 is the oriented resolution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

Crossing = Tuple[int, int, int, int]


class PDSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class ArcConsistencyError(ValueError):
    pass


class NotAKnotError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: Tuple[Crossing, ...]
    arc_count: int
    name: str = ""
    disconnected: bool = False

    @property
    def c(self) -> int:
        return len(self.crossings)

    def __len__(self):
        return len(self.crossings)

    def to_pd(self) -> str:
        return "PD[" + ",".join("X(%d,%d,%d,%d)" % x for x in self.crossings) + "]"

    def __str__(self):
        return self.to_pd()


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(PD|X|P)|([\[\](),]))")


def _tokens(text: str):
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PDSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            yield ("int", int(m.group(1)), start)
        elif m.group(2):
            yield ("word", m.group(2), start)
        else:
            yield ("punct", m.group(3), start)
        pos = m.end()
    yield ("end", None, n)


def _parse_crossings(text: str) -> List[Crossing]:
    """Accepts ``PD[X(1,4,2,5),...]``, ``PD[X[1,4,2,5],...]`` and the bare
    list form ``[[1,4,2,5],...]``."""
    toks = list(_tokens(text))
    i = 0

    def peek():
        return toks[i]

    def expect(kind, val=None):
        nonlocal i
        t = toks[i]
        if t[0] != kind or (val is not None and t[1] not in val):
            want = val if val is not None else kind
            raise PDSyntaxError(f"expected {want}, found {t[1]!r}", t[2])
        i += 1
        return t

    closing = {"[": "]", "(": ")"}
    out: List[Crossing] = []
    if peek()[0] == "word":
        w = expect("word")
        if w[1] != "PD":
            raise PDSyntaxError("expected PD", w[2])
    opener = expect("punct", ("[", "("))[1]
    if peek()[0] == "punct" and peek()[1] == closing[opener]:
        i += 1
    else:
        while True:
            if peek()[0] == "word":
                w = expect("word")
                if w[1] != "X":
                    raise PDSyntaxError(f"unsupported element {w[1]}", w[2])
            o2 = expect("punct", ("[", "("))[1]
            nums = []
            for k in range(4):
                nums.append(expect("int")[1])
                if k < 3:
                    expect("punct", (",",))
            expect("punct", (closing[o2],))
            out.append(tuple(nums))
            t = expect("punct", (",", closing[opener]))
            if t[1] == closing[opener]:
                break
    end = toks[i]
    if end[0] != "end":
        raise PDSyntaxError("trailing input", end[2])
    return out


def _components_of_graph(crossings: Sequence[Crossing]) -> int:
    """Connected components of the 4-valent graph (crossings joined by arcs)."""
    if not crossings:
        return 1
    parent = list(range(len(crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen: Dict[int, int] = {}
    for k, x in enumerate(crossings):
        for a in x:
            if a in seen:
                ra, rb = find(seen[a]), find(k)
                if ra != rb:
                    parent[ra] = rb
            else:
                seen[a] = k
    return len({find(k) for k in range(len(crossings))})


def validate(crossings: Sequence[Crossing]) -> int:
    """Arc-occurrence check; returns arc_count."""
    counts: Dict[int, int] = {}
    for x in crossings:
        if len(x) != 4:
            raise ArcConsistencyError(f"crossing {x} does not have 4 arcs")
        for a in x:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        raise ArcConsistencyError(
            "arcs used a number of times other than 2: "
            + ", ".join(f"{a} ({counts[a]}x)" for a in bad))
    n = len(counts)
    if set(counts) != set(range(1, n + 1)):
        raise ArcConsistencyError(f"arc labels are not 1..{n}")
    if n != 2 * len(crossings):
        raise ArcConsistencyError("arc count is not twice the crossing count")
    return n


def make_diagram(crossings: Sequence[Sequence[int]], name: str = "") -> PlanarDiagram:
    cr = tuple(tuple(int(a) for a in x) for x in crossings)
    n = validate(cr)
    return PlanarDiagram(cr, n, name, _components_of_graph(cr) > 1)


def parse_pd(text: str, name: str = "") -> PlanarDiagram:
    return make_diagram(_parse_crossings(text), name)


# ---------------------------------------------------------------------------
# orientation and signs

def arc_directions(d: PlanarDiagram) -> List[Tuple[bool, bool, bool, bool]]:
    """For each crossing, which of its four slots are incoming."""
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for k, x in enumerate(d.crossings):
        for s, a in enumerate(x):
            occ.setdefault(a, []).append((k, s))
    inc: Dict[Tuple[int, int], bool] = {}
    stack = []

    def setdir(k, s, val):
        if (k, s) in inc:
            if inc[(k, s)] != val:
                raise ArcConsistencyError(f"inconsistent orientation at crossing {k}")
            return
        inc[(k, s)] = val
        stack.append((k, s))

    for k in range(d.c):
        setdir(k, 0, True)
        setdir(k, 2, False)
    pending = list(range(d.c))
    while True:
        while stack:
            k, s = stack.pop()
            a = d.crossings[k][s]
            # the other end of the arc has the opposite direction
            for k2, s2 in occ[a]:
                if (k2, s2) != (k, s):
                    setdir(k2, s2, not inc[(k, s)])
            # within a crossing, the opposite slot continues the strand
            setdir(k, (s + 2) % 4, not inc[(k, s)])
        left = [k for k in pending if (k, 1) not in inc]
        if not left:
            break
        # a component that only passes over: fall back on the numbering
        k = left[0]
        b, dd = d.crossings[k][1], d.crossings[k][3]
        setdir(k, 3, (b - dd) % d.arc_count == 1)
    return [tuple(inc[(k, s)] for s in range(4)) for k in range(d.c)]


def crossing_signs(d: PlanarDiagram) -> List[int]:
    return [1 if dirs[3] else -1 for dirs in arc_directions(d)]


def link_components(d: PlanarDiagram) -> int:
    if d.c == 0:
        return 1
    parent = {a: a for x in d.crossings for a in x}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, dd in d.crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(dd)
    return len({find(a) for a in parent})


# ---------------------------------------------------------------------------
# Kauffman states

@dataclass(frozen=True)
class KauffmanState:
    choices: Tuple[int, ...]   # 0 = A-smoothing, 1 = B-smoothing

    @classmethod
    def all_a(cls, n):
        return cls((0,) * n)

    @classmethod
    def all_b(cls, n):
        return cls((1,) * n)


def smoothing_pairs(x: Crossing, bit: int):
    a, b, c, d = x
    return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))


def resolve(d: PlanarDiagram, s) -> int:
    """Number of circles after smoothing every crossing according to s."""
    choices = s.choices if isinstance(s, KauffmanState) else tuple(s)
    if len(choices) != d.c:
        raise ValueError(f"state has {len(choices)} entries, diagram has {d.c} crossings")
    if d.c == 0:
        return 1
    parent = list(range(d.arc_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, bit in zip(d.crossings, choices):
        for p, q in smoothing_pairs(x, bit):
            rp, rq = find(p), find(q)
            if rp != rq:
                parent[rp] = rq
    return len({find(a) for a in range(1, d.arc_count + 1)})


@dataclass
class DiagramReport:
    c: int
    c_plus: int
    c_minus: int
    s_A: int
    s_B: int
    writhe: int
    g_T_diagram: int
    sigma_lower: Optional[int]
    sigma_upper: Optional[int]
    components: int = 1


def diagram_report(d: PlanarDiagram) -> DiagramReport:
    signs = crossing_signs(d)
    cp = sum(1 for s in signs if s > 0)
    cm = d.c - cp
    sA = resolve(d, KauffmanState.all_a(d.c))
    sB = resolve(d, KauffmanState.all_b(d.c))
    # each connected piece of the projection contributes its own sphere
    pieces = max(_components_of_graph(d.crossings), 1)
    twice = 2 * pieces + d.c - sA - sB
    if twice < 0 or twice % 2:
        raise ValueError(f"bad Turaev genus numerator {twice}")
    comps = link_components(d)
    lo = hi = None
    if comps == 1 and not d.disconnected:
        lo = sA - cp - 1
        hi = -sB + cm + 1
    return DiagramReport(d.c, cp, cm, sA, sB, cp - cm, twice // 2, lo, hi, comps)


# ---------------------------------------------------------------------------
# Jones polynomial through the Kauffman bracket (an oracle for Euler
# characteristics; exponential in the crossing number)

def bracket(d: PlanarDiagram) -> Dict[int, int]:
    """<D> as {power of A: coefficient}, normalised so the unknot is 1."""
    from itertools import product
    out: Dict[int, int] = {}
    delta = {2: -1, -2: -1}
    for state in product((0, 1), repeat=d.c):
        na = state.count(0)
        nb = d.c - na
        term = {na - nb: 1}
        for _ in range(resolve(d, state) - 1):
            nt: Dict[int, int] = {}
            for e, c in term.items():
                for e2, c2 in delta.items():
                    nt[e + e2] = nt.get(e + e2, 0) + c * c2
            term = nt
        for e, c in term.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def jones_unnormalized(d: PlanarDiagram) -> Dict[int, int]:
    """(q + 1/q) V(q^2) as {power of q: coeff}, V the Jones polynomial.

    V(t) = (-A^3)^(-w) <D> at A = t^(-1/4); with t = q^2, A^e becomes
    q^(-e/2).  The result has integer exponents for knots.
    """
    w = sum(crossing_signs(d))
    br = bracket(d)
    f: Dict[int, int] = {}
    sign = -1 if w % 2 else 1
    for e, c in br.items():
        e2 = e - 3 * w
        f[e2] = f.get(e2, 0) + sign * c
    V2: Dict[int, int] = {}
    for e, c in f.items():
        if e % 2:
            raise ValueError("odd bracket exponent")
        V2[-e // 2] = c
    out: Dict[int, int] = {}
    for e, c in V2.items():
        for s in (1, -1):
            out[e + s] = out.get(e + s, 0) + c
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# generators

def _renumber(crossings: List[List[int]]) -> List[Crossing]:
    """Relabel arcs 1..2n consecutively along each component, following the
    orientation (under a -> c, over by propagation)."""
    if not crossings:
        return []
    tmp = PlanarDiagram(tuple(tuple(x) for x in crossings), 0)
    labels = sorted({a for x in crossings for a in x})
    tmp = PlanarDiagram(tmp.crossings, len(labels))
    dirs = arc_directions(tmp)
    # arc -> (crossing, slot) where it is incoming; slot -> outgoing arc there
    head: Dict[int, Tuple[int, int]] = {}
    for k, x in enumerate(crossings):
        for s in range(4):
            if dirs[k][s]:
                head[x[s]] = (k, s)
    nxt = {}
    for a, (k, s) in head.items():
        nxt[a] = crossings[k][(s + 2) % 4]
    new: Dict[int, int] = {}
    count = 0
    for start in labels:
        if start in new:
            continue
        a = start
        while a not in new:
            count += 1
            new[a] = count
            a = nxt[a]
    return [tuple(new[a] for a in x) for x in crossings]


def braid_closure(word: Sequence[int], strands: int, name: str = "") -> PlanarDiagram:
    """PD code of the closure of a braid word (generator i > 0 crosses strands
    i and i+1 positively, -i negatively)."""
    if strands < 1:
        raise ValueError("need at least one strand")
    pos = list(range(1, strands + 1))
    top = list(pos)
    nxt = strands + 1
    cr: List[List[int]] = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range")
        x, y = pos[i], pos[i + 1]
        x2, y2 = nxt, nxt + 1
        nxt += 2
        if g > 0:
            cr.append([x, y2, x2, y])
        else:
            cr.append([y, x, y2, x2])
        pos[i], pos[i + 1] = y2, x2
    # close up: bottom label pos[j] is identified with top label top[j]
    alias = {b: t for b, t in zip(pos, top) if b != t}

    def canon(a):
        while a in alias:
            a = alias[a]
        return a

    cr = [[canon(a) for a in x] for x in cr]
    used = {a for x in cr for a in x}
    if len(used) != 2 * len(cr):
        # strands that never cross form split unknots, which PD cannot express
        raise ValueError("braid closure has a strand without crossings")
    return make_diagram(_renumber(cr), name)


def _orient_unders(cr: List[List[int]]) -> List[List[int]]:
    """Crossings given counterclockwise with the under-strand in slots 0 and
    2 but of unknown direction: walk every component and rotate each tuple
    so it starts at the incoming under-strand."""
    where: Dict[int, List[Tuple[int, int]]] = {}
    for k, x in enumerate(cr):
        for s in range(4):
            where.setdefault(x[s], []).append((k, s))
    enters: Dict[Tuple[int, int], bool] = {}
    for k0 in range(len(cr)):
        for s0 in (0, 1):
            if (k0, s0) in enters:
                continue
            k, s = k0, s0
            while (k, s) not in enters:
                enters[(k, s)] = True
                out = (s + 2) % 4
                enters[(k, out)] = False
                a = cr[k][out]
                k, s = next(o for o in where[a] if o != (k, out))
    res = []
    for k, x in enumerate(cr):
        res.append(list(x) if enters[(k, 0)] else [x[2], x[3], x[0], x[1]])
    return res


def plat_closure(word: Sequence[int], strands: int, name: str = "") -> PlanarDiagram:
    """Braid word on an even number of strands closed by caps joining
    positions (1,2), (3,4), ... at both ends.  Strand directions come from
    the closed curve, not from the braid, so any knot type can occur."""
    if strands < 2 or strands % 2:
        raise ValueError("plat closure needs an even number of strands")
    pos = list(range(1, strands + 1))
    bottom = list(pos)
    nxt = strands + 1
    cr: List[List[int]] = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range")
        bl, br = pos[i], pos[i + 1]
        tl, tr = nxt, nxt + 1
        nxt += 2
        # same cyclic order as braid_closure; g > 0 has bl -> tr underneath
        cr.append([bl, tl, tr, br] if g > 0 else [br, bl, tl, tr])
        pos[i], pos[i + 1] = tl, tr
    parent: Dict[int, int] = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for ends in (bottom, pos):
        for k in range(0, strands, 2):
            ra, rb = find(ends[k]), find(ends[k + 1])
            if ra != rb:
                parent[rb] = ra
    cr = [[find(a) for a in x] for x in cr]
    used = {a for x in cr for a in x}
    if len(used) != 2 * len(cr):
        raise ValueError("plat closure has a component without crossings")
    return make_diagram(_renumber(_orient_unders(cr)), name)


def torus_knot(p: int, q: int) -> PlanarDiagram:
    """Closure of (s_1 s_2 ... s_{p-1})^q, all crossings positive."""
    if p < 2 or q < 2:
        raise ValueError("torus_knot needs p, q >= 2")
    if gcd(p, q) != 1:
        raise ValueError(f"T({p},{q}) is not a knot (gcd {gcd(p, q)})")
    word = list(range(1, p)) * q
    return braid_closure(word, p, name=f"T({p},{q})")


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over and under at every crossing."""
    if d.c == 0:
        return d
    dirs = arc_directions(d)
    out = []
    for x, inc in zip(d.crossings, dirs):
        a, b, c, dd = x
        out.append((dd, a, b, c) if inc[3] else (b, c, dd, a))
    name = d.name[1:] if d.name.startswith("m") else ("m" + d.name if d.name else "")
    return PlanarDiagram(tuple(out), d.arc_count, name, d.disconnected)


# K(m, n): a twist region T_1..T_{2m+1}, a clasp (C, D) and 2n boxes, each a
# three-strand half twist made of crossings E, F, G.  Every crossing is drawn
# with the over-strand from upper-left to lower-right.

_CCW = ("UR", "UL", "LL", "LR")
_THROUGH = {"UL": "LR", "LR": "UL", "LL": "UR", "UR": "LL"}
_UNDER = ("LL", "UR")


def _kmn_edges(m: int, n: int):
    T = [f"T{k}" for k in range(1, 2 * m + 2)]
    boxes = [(f"E{j}", f"F{j}", f"G{j}") for j in range(1, 2 * n + 1)]
    edges = []
    for k in range(len(T) - 1):
        edges.append(((T[k], "UR"), (T[k + 1], "UL")))
        edges.append(((T[k], "LR"), (T[k + 1], "LL")))
    E1, F1, _ = boxes[0]
    _, Fl, Gl = boxes[-1]
    edges += [
        ((T[0], "UL"), (Gl, "UR")),
        ((T[0], "LL"), (Gl, "LR")),
        (("D", "LL"), (Fl, "LR")),
        ((T[-1], "UR"), (E1, "UL")),
        ((T[-1], "LR"), ("C", "UL")),
        (("C", "UR"), (E1, "LL")),
        (("C", "LL"), ("D", "UL")),
        (("D", "UR"), ("C", "LR")),
        (("D", "LR"), (F1, "LL")),
    ]
    for j, (E, F, G) in enumerate(boxes):
        edges += [((E, "UR"), (G, "UL")), ((E, "LR"), (F, "UL")), ((F, "UR"), (G, "LL"))]
        if j + 1 < len(boxes):
            E2, F2, _ = boxes[j + 1]
            edges += [((G, "UR"), (E2, "UL")), ((G, "LR"), (E2, "LL")),
                      ((F, "LR"), (F2, "LL"))]
    names = T + ["C", "D"] + [x for b in boxes for x in b]
    return names, edges


def kmn_knot(m: int, n: int, mirror_image: bool = False) -> PlanarDiagram:
    if m < 1 or n < 1:
        raise ValueError("K(m,n) needs m, n >= 1")
    names, edges = _kmn_edges(m, n)
    port_edge: Dict[Tuple[str, str], int] = {}
    other: Dict[Tuple[str, str], Tuple[str, str]] = {}
    for idx, (p, q) in enumerate(edges):
        for port in (p, q):
            if port in port_edge:
                raise AssertionError(f"port {port} used twice")
            port_edge[port] = idx
        other[p], other[q] = q, p
    if len(port_edge) != 4 * len(names):
        raise AssertionError("unused ports in K(m,n) transcription")
    # walk the knot, labelling edges in order of traversal
    label: Dict[int, int] = {}
    incoming: Dict[Tuple[str, str], bool] = {}
    port = (names[0], "LL")   # enter T1 along the under-strand
    count = 0
    while True:
        incoming[port] = True
        out = (port[0], _THROUGH[port[1]])
        incoming[out] = False
        e = port_edge[out]
        if e in label:
            break
        count += 1
        label[e] = count
        port = other[out]
        if port in incoming:
            break
    if len(label) != len(edges):
        raise AssertionError("K(m,n) transcription is not a single component")
    cr = []
    for x in names:
        start = "LL" if incoming[(x, "LL")] else "UR"
        i = _CCW.index(start)
        cr.append(tuple(label[port_edge[(x, _CCW[(i + k) % 4])]] for k in range(4)))
    d = make_diagram(cr, name=f"K({m},{n})")
    return mirror(d) if mirror_image else d
