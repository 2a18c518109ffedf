"""Knots shipped with the package under short names (``named:NAME`` on the
command line)."""

from __future__ import annotations

from typing import Dict

from .diagram import PlanarDiagram, parse_pd

# K(1,1), written out by hand; kmn_knot(1, 1) must produce the same diagram
KMN_11 = ("PD[X(22,8,1,7),X(8,2,9,1),X(2,10,3,9),X(17,11,18,10),X(11,17,12,16),"
          "X(18,4,19,3),X(15,4,16,5),X(14,19,15,20),X(20,13,21,14),X(5,12,6,13),"
          "X(6,22,7,21)]")

_PD: Dict[str, str] = {
    "unknot": "PD[]",
    "trefoil": "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]",
    "figure8": "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]",
    "kmn11": KMN_11,
}

# names that are known but have no diagram available in this build
_MISSING = {
    "mm": "no diagram of the Manolescu-Marengon knot is bundled; pass it with pd:...",
}


def names():
    return sorted(_PD)


def named_knot(name: str) -> PlanarDiagram:
    key = name.strip().lower()
    if key in _MISSING:
        raise KeyError(_MISSING[key])
    if key not in _PD:
        raise KeyError(f"unknown named knot {name!r}; known: {', '.join(names())}")
    return parse_pd(_PD[key], name=key)
