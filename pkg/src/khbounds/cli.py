"""Command line: ``khbounds kh|bounds|pages|s|frobenius-check``.

Knot sources (``--knot``):
    pd:PD[X(1,4,2,5),...]   inline PD code
    corpus:4_1              bundled table (prefix m for the mirror: corpus:m3_1)
    torus:5,6               closure of (s1 ... s_{p-1})^q
    kmn:1,2                 the K(m, n) family
    named:mm                fixtures shipped with the package

Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 resource cap hit,
4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from . import __version__
from .complex.cube import CubeTooLarge
from .complex.tangle import ResourceCapExceeded, _default_progress
from .diagram import (ArcConsistencyError, NotAKnotError, PDSyntaxError, PlanarDiagram,
                      kmn_knot, parse_pd, torus_knot)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


def _ints(spec: str, n: int) -> List[int]:
    try:
        vals = [int(x) for x in spec.split(",")]
    except ValueError:
        raise InputError(f"expected {n} integers, got {spec!r}") from None
    if len(vals) != n:
        raise InputError(f"expected {n} integers, got {spec!r}")
    return vals


def load_knot(source: str) -> PlanarDiagram:
    kind, _, arg = source.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "pd":
            return parse_pd(arg, name=arg if len(arg) < 40 else "pd")
        if kind == "corpus":
            from .corpus import corpus_knot
            try:
                return corpus_knot(arg)
            except KeyError as e:
                raise InputError(str(e)) from None
        if kind == "torus":
            p, q = _ints(arg, 2)
            return torus_knot(p, q)
        if kind == "kmn":
            m, n = _ints(arg, 2)
            return kmn_knot(m, n)
        if kind == "named":
            from .fixtures import named_knot
            try:
                return named_knot(arg)
            except KeyError as e:
                raise InputError(str(e)) from None
    except (PDSyntaxError, ArcConsistencyError) as e:
        raise InputError(str(e)) from None
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(str(e)) from None
    raise InputError(f"unknown knot source {source!r}")


def _rings(spec: str) -> List[str]:
    from .homology import as_field
    out = [r.strip() for r in spec.split(",") if r.strip()]
    if not out:
        raise InputError("no ring given")
    for r in out:
        try:
            as_field(r)
        except ValueError as e:
            raise InputError(str(e)) from None
    return out


def _progress(args):
    return _default_progress if args.progress else None


# ---------------------------------------------------------------------------
# subcommands

def cmd_kh(args) -> int:
    from .homology import kh_table, report_json
    d = load_knot(args.knot)
    ring = _rings(args.ring)[0]
    tab = kh_table(d, ring, route=args.route, max_objects=args.max_objects,
                   progress=_progress(args), check=True)
    if args.format == "csv":
        sys.stdout.write(tab.to_csv())
    elif args.format == "json":
        sys.stdout.write(report_json(tab))
    else:
        sys.stdout.write(f"Kh({d.name or 'K'}; {tab.ring})  width {tab.width}"
                         f"{'  thin' if tab.thin else ''}\n")
        sys.stdout.write(tab.to_grid())
    return EXIT_OK


def _bound_job(payload):
    from .homology import bound_report
    d, ring, cap = payload
    return ring, bound_report(d, [ring], max_objects=cap)


def cmd_bounds(args) -> int:
    from .homology import bound_report
    d = load_knot(args.knot)
    rings = _rings(args.rings)
    if args.jobs > 1 and len(rings) > 1:
        # one worker per ring; merged in the order given
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            parts = dict(ex.map(_bound_job, [(d, r, args.max_objects) for r in rings]))
        rep = _merge_reports(d, rings, parts)
    else:
        rep = bound_report(d, rings, max_objects=args.max_objects, progress=_progress(args))
    doc = rep.to_dict()
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write("bound,value,rule\n")
        sys.stdout.write(f"alt_lb,{rep.alt_lb.value},{rep.alt_lb.rule}\n")
        for r, b in rep.d_thin_lb.items():
            sys.stdout.write(f"dthin_lb[{r}],{b.value},{b.rule}\n")
        sys.stdout.write(f"turaev_lb,{rep.turaev_lb.value},{rep.turaev_lb.rule}\n")
        sys.stdout.write(f"unknotting_lb,{rep.unknotting_lb.value},{rep.unknotting_lb.rule}\n")
    else:
        out = [f"knot {d.name or 'K'}"]
        for r, v in rep.pg_lee.items():
            out.append(f"  pg_Lee({r}) = {v}   u_X = {rep.u_x[r]}   width = {rep.width[r]}")
        if rep.pg_bn is not None:
            out.append(f"  pg_BN(F2) = {rep.pg_bn}   width = {rep.width.get('F2')}")
        rows = [("alt_lb", rep.alt_lb)]
        rows += [(f"dthin_lb[{r}]", b) for r, b in rep.d_thin_lb.items()]
        rows += [("turaev_lb", rep.turaev_lb), ("unknotting_lb", rep.unknotting_lb)]
        for name, b in rows:
            out.append(f"{name:<14}{b.value:>3}   ({b.rule})")
        sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def _merge_reports(d, rings, parts):
    from .homology import BoundReport, _best
    pg_lee, u_x, width, dthin, profiles, tables = {}, {}, {}, {}, {}, {}
    pg_bn = None
    alt, tur, unk = [(0, "trivial")], [(0, "trivial")], [(0, "trivial")]
    for r in rings:
        p = parts[r]
        pg_lee.update(p.pg_lee)
        u_x.update(p.u_x)
        width.update(p.width)
        dthin.update(p.d_thin_lb)
        profiles.update(p.profiles)
        tables.update(p.tables)
        if p.pg_bn is not None:
            pg_bn = p.pg_bn
        alt.append((p.alt_lb.value, p.alt_lb.rule))
        tur.append((p.turaev_lb.value, p.turaev_lb.rule))
        unk.append((p.unknotting_lb.value, p.unknotting_lb.rule))
    return BoundReport(d.name, pg_lee, pg_bn, u_x, width, _best(alt), dthin,
                       _best(tur), _best(unk), profiles, tables)


def cmd_pages(args) -> int:
    from .homology import spectral_pages
    d = load_knot(args.knot)
    ring = _rings(args.ring)[0]
    sp = spectral_pages(d, ring, deformation=args.deformation, route=args.route)
    if args.format == "json":
        doc = {"knot": d.name, "ring": sp.ring, "deformation": sp.deformation,
               "collapse": sp.collapse,
               "pages": [[{"i": i, "j": j, "rank": v} for (i, j), v in sorted(p.items())]
                         for p in sp.pages],
               "infinity": [{"i": i, "j": j, "rank": v} for (i, j), v in sorted(sp.infinity.items())]}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write("page,i,j,rank\n")
        for k, p in enumerate(sp.pages, 1):
            for (i, j), v in sorted(p.items()):
                sys.stdout.write(f"{k},{i},{j},{v}\n")
        for (i, j), v in sorted(sp.infinity.items()):
            sys.stdout.write(f"inf,{i},{j},{v}\n")
    else:
        from .homology import HomologyTable
        for k, p in enumerate(sp.pages, 1):
            sys.stdout.write(f"E_{k} ({sum(p.values())} total)\n")
            sys.stdout.write(HomologyTable(sp.ring, p).to_grid())
        sys.stdout.write(f"collapse page {sp.collapse}\n")
    return EXIT_OK


def cmd_s(args) -> int:
    from .homology import s_invariant
    d = load_knot(args.knot)
    ring = _rings(args.ring)[0]
    s = s_invariant(d, ring)
    if args.format == "json":
        sys.stdout.write(json.dumps({"knot": d.name, "ring": ring, "s": s}, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"{s}\n")
    return EXIT_OK


def _n_range(spec: str) -> List[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(spec)
    if lo < 2 or hi < lo:
        raise InputError(f"bad rank range {spec!r}")
    return list(range(lo, hi + 1))


def cmd_frobenius_check(args) -> int:
    from .frobenius import corrupted, make_system, verify_all
    systems = []
    try:
        if args.system:
            for name in args.system:
                if name.startswith("sln"):
                    n = int(name[3:].strip("()")) if name[3:] else 2
                    systems.append(make_system("sln", n))
                else:
                    systems.append(make_system(name))
        else:
            for n in _n_range(args.n):
                systems.append(make_system("sln", n))
            for kind in ("universal_sl2", "universal_sl3", "lee_sl2", "barnatan_sl2"):
                systems.append(make_system(kind))
    except (ValueError, KeyError) as e:
        raise InputError(str(e)) from None
    if args.corrupt:
        systems = [corrupted(s) for s in systems]
    ok = True
    for s in systems:
        for rep in verify_all(s, max_genus=args.max_genus):
            if not rep.passed or args.verbose:
                sys.stdout.write(rep.line() + "\n")
            ok = ok and rep.passed
    sys.stdout.write(("all checks passed" if ok else "FAILED") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khbounds", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"khbounds {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, ring_flag="--ring", default="Q"):
        p.add_argument("--knot", required=True, help="pd:..., corpus:NAME, torus:p,q, kmn:m,n, named:NAME")
        p.add_argument(ring_flag, default=default)
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--max-objects", type=int, default=None,
                       help="abort the scan when more objects are alive")
        p.add_argument("--progress", action="store_true", help="scan progress on stderr")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("kh", help="Khovanov homology table")
    common(p)
    p.add_argument("--route", choices=("scan", "cube"), default="scan")
    p.set_defaults(func=cmd_kh)

    p = sub.add_parser("bounds", help="collapse pages and lower bounds")
    common(p, "--rings", "Q,F2")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("pages", help="spectral sequence pages")
    common(p)
    p.add_argument("--deformation", choices=("auto", "lee", "barnatan"), default="auto")
    p.add_argument("--route", choices=("scan", "cube"), default="cube")
    p.set_defaults(func=cmd_pages)

    p = sub.add_parser("s", help="Rasmussen s-invariant")
    common(p)
    p.set_defaults(func=cmd_s)

    p = sub.add_parser("frobenius-check", help="verify the Frobenius system identities")
    p.add_argument("--n", default="2..8", help="rank range for sl(n), e.g. 2..8")
    p.add_argument("--system", action="append",
                   help="universal_sl2, universal_sl3, lee_sl2, barnatan_sl2 or slnN")
    p.add_argument("--max-genus", type=int, default=3)
    p.add_argument("--corrupt", action="store_true", help="drop a Delta(1) term (negative control)")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_frobenius_check)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    from .homology import InvariantFailure
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NotAKnotError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceCapExceeded, CubeTooLarge) as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except InvariantFailure as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
