"""Regenerate src/khbounds/data/corpus.tsv from the KnotInfo database.

Needs the ``database_knotinfo`` package (pip install database_knotinfo).
Only prime knots up to 9 crossings are kept, plus the unknot.
"""

import csv
import sys
from pathlib import Path

import database_knotinfo

OUT = Path(__file__).resolve().parents[1] / "src" / "khbounds" / "data" / "corpus.tsv"
COLS = ["name", "pd_notation", "signature", "alternating", "jones_polynomial",
        "rasmussen_invariant", "khovanov_unreduced_integral_polynomial"]


def main():
    csv.field_size_limit(10 ** 9)
    src = Path(database_knotinfo.__file__).parent / "csv_data" / "knotinfo_data_complete.csv"
    with open(src, newline="") as f:
        rows = list(csv.reader(f, delimiter="|"))
    idx = {h: i for i, h in enumerate(rows[0])}
    keep = []
    for row in rows[1:]:
        cn = row[idx["crossing_number"]]
        if cn.isdigit() and int(cn) <= 9:
            keep.append(row)
    with open(OUT, "w") as out:
        out.write("# name\tpd\tsignature\talternating\tjones\trasmussen\tkh_integral\n")
        for row in keep:
            vals = [row[idx[c]].strip() for c in COLS]
            if vals[0] == "0_1":
                vals[1] = "[]"
                vals[5] = "0"
                vals[6] = "q^(-1)+ q"
            out.write("\t".join(vals) + "\n")
    print(f"wrote {len(keep)} knots to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
