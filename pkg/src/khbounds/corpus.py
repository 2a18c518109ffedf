"""Bundled table of prime knots up to 9 crossings (KnotInfo data).

Columns: name, PD code (KnotInfo list form), signature, alternating flag,
Jones polynomial, Rasmussen invariant, integral Khovanov polynomial.
Set ``KHBOUNDS_CORPUS`` to read a different file with the same layout.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .diagram import PlanarDiagram, mirror, parse_pd

ENV_VAR = "KHBOUNDS_CORPUS"


@dataclass
class CorpusEntry:
    name: str
    pd: str
    signature: Optional[int]
    alternating: bool
    jones: Dict[int, int]                  # power of t -> coefficient
    rasmussen: Optional[int]
    kh_free: Dict[Tuple[int, int], int] = field(default_factory=dict)
    kh_torsion: Dict[Tuple[int, int], int] = field(default_factory=dict)   # Z/2 summands

    def diagram(self) -> PlanarDiagram:
        return parse_pd(self.pd, name=self.name)

    def jones_unnormalized(self) -> Dict[int, int]:
        """(q + 1/q) V(q^2)."""
        out: Dict[int, int] = {}
        for e, c in self.jones.items():
            for s in (1, -1):
                out[2 * e + s] = out.get(2 * e + s, 0) + c
        return {e: c for e, c in out.items() if c}

    def kh_ranks(self, characteristic: int) -> Dict[Tuple[int, int], int]:
        """Ranks over Q (0) or F2 from the integral polynomial (odd torsion
        does not occur up to 9 crossings, so F_p for odd p matches Q)."""
        out = dict(self.kh_free)
        if characteristic == 2:
            for (i, j), k in self.kh_torsion.items():
                out[(i, j)] = out.get((i, j), 0) + k
                out[(i - 1, j)] = out.get((i - 1, j), 0) + k
        return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?(.*)")
_VAR = re.compile(r"([a-zA-Z])(?:\^\(?(-?\d+)\)?)?")


def _split_terms(poly: str) -> List[str]:
    s = poly.replace(" ", "")
    return [t for t in re.split(r"(?<!\()\+|(?<!\()(?=-)", s) if t]


def parse_laurent(poly: str) -> List[Tuple[int, Dict[str, int]]]:
    """'t^(-2)-t^(-1)+ 1' -> [(1, {'t': -2}), (-1, {'t': -1}), (1, {})]."""
    out = []
    for term in _split_terms(poly):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        m = re.match(r"(\d+)\*?", term)
        coef = 1
        if m:
            coef = int(m.group(1))
            term = term[m.end():]
        powers: Dict[str, int] = {}
        for vm in _VAR.finditer(term):
            powers[vm.group(1)] = powers.get(vm.group(1), 0) + int(vm.group(2) or 1)
        out.append((sign * coef, powers))
    return out


def _parse_row(parts: List[str]) -> CorpusEntry:
    name, pd, sig, alt, jones, ras, kh = (parts + [""] * 7)[:7]
    jd: Dict[int, int] = {}
    for c, p in parse_laurent(jones):
        e = p.get("t", 0)
        jd[e] = jd.get(e, 0) + c
    free: Dict[Tuple[int, int], int] = {}
    tors: Dict[Tuple[int, int], int] = {}
    if kh:
        for c, p in parse_laurent(kh):
            key = (p.get("t", 0), p.get("q", 0))
            tgt = tors if "T" in p else free
            tgt[key] = tgt.get(key, 0) + c
    return CorpusEntry(
        name=name,
        pd=pd,
        signature=int(sig) if sig.lstrip("-").isdigit() else None,
        alternating=alt.strip().upper() == "Y",
        jones={e: c for e, c in jd.items() if c},
        rasmussen=int(ras) if ras.lstrip("-").isdigit() else None,
        kh_free=free,
        kh_torsion=tors,
    )


def corpus_path() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return str(resources.files("khbounds").joinpath("data/corpus.tsv"))


@lru_cache(maxsize=4)
def _load(path: str) -> Tuple[CorpusEntry, ...]:
    out = []
    with open(path) as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            out.append(_parse_row(line.rstrip("\n").split("\t")))
    return tuple(out)


def load_corpus(path: Optional[str] = None) -> List[CorpusEntry]:
    return list(_load(path or corpus_path()))


def corpus_entry(name: str) -> CorpusEntry:
    for e in load_corpus():
        if e.name == name:
            return e
    raise KeyError(f"no corpus knot named {name!r}")


def corpus_knot(name: str) -> PlanarDiagram:
    """Diagram for a corpus name; a leading 'm' asks for the mirror image."""
    try:
        return corpus_entry(name).diagram()
    except KeyError:
        if name.startswith("m"):
            return mirror(corpus_entry(name[1:]).diagram())
        raise
