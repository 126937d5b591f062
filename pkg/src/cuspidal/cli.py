"""Command-line interface: ``cuspidal {classify,frontalize,sweep,mesh,verify,export-builtin}``.

Exit codes: 0 on success, 1 when a verification suite fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .classify import classify_origin, label_point, two_jet_class
from .errors import CuspidalError
from .frontal import minimal_frontalization, singular_sets
from .geometry import (
    bias_secondary,
    bias_secondary_series,
    parameter_value,
    si_curvatures_at,
    solve_singular_u,
)
from .germs import (
    FrontalNormalForm,
    MapGerm,
    assemble,
    builtin,
    builtin_names,
    dump_germ_spec,
    germ_spec_text,
    load_germ_spec,
    normalize,
    reduce_parameter,
)
from .jets import Jet
from .verify import SUITES, format_report, run_suites

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2

CSV_COLUMNS = ("s_tilde", "u_root", "label", "r_b", "r_c", "kappa_g_abs", "kappa_n",
               "method_rb", "method_rc")


class InputError(Exception):
    """Bad command-line input (reported with exit code 2)."""


# -- loading ---------------------------------------------------------------------------


def load_germ(ref: str, order=None, exact=True) -> MapGerm:
    """A germ from a spec file path or ``builtin:NAME``."""
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            germ = assemble(builtin(name, order or 8))
    else:
        try:
            germ = load_germ_spec(ref)
        except OSError as exc:
            raise InputError(f"cannot read {ref}: {exc.strerror}") from None
    if order is not None:
        germ = germ.truncate(order)
    return germ if exact else germ.to_float()


@dataclass(frozen=True)
class Prepared:
    normal_form: object
    frontal: FrontalNormalForm
    obstruction: Jet


def prepare(germ: MapGerm, *, reduce=False) -> Prepared:
    """Normal form, its minimal frontalization and the obstruction ``v f33``."""
    nf, _ = normalize(germ)
    fnf, obstruction = minimal_frontalization(nf)
    if reduce:
        fnf = FrontalNormalForm.from_normal_form(reduce_parameter(fnf.to_normal_form()))
    return Prepared(nf, fnf, obstruction)


def _fmt(x):
    if x is None:
        return ""
    return format(float(x), ".17g")


# -- classify / frontalize ---------------------------------------------------------------


def classify_text(germ: MapGerm) -> str:
    prep = prepare(germ)
    label = classify_origin(prep.frontal)
    if prep.obstruction.is_zero():
        head = f"frontal; {label} at origin"
        tail = []
    else:
        head = f"not frontal; obstruction {prep.obstruction}"
        tail = [f"frontal part: {label} at origin"]
    return "\n".join([head, f"2-jet class: {two_jet_class(prep.normal_form)}", *tail]) + "\n"


# -- sweep -----------------------------------------------------------------------------


def sweep_samples(lo, hi, count):
    if count <= 0:
        return []
    if count == 1:
        return [float(lo)]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _sweep_point(fnf: FrontalNormalForm, series, st):
    """CSV rows for both singular points at ``s~ = st``."""
    rows = []
    s = parameter_value(fnf, st)
    roots = solve_singular_u(fnf, st)
    for branch, u0 in zip((1, -1), roots):
        label = str(label_point(fnf, u0, 0, s))
        try:
            bs = bias_secondary(fnf, u0, s)
            rb, rc, mb, mc = bs.r_b, bs.r_c, "oracle", "oracle"
        except CuspidalError:
            sst = branch * st
            rb, rc, mb, mc = series.r_b(sst), series.r_c(sst), "series", "series"
        try:
            kg, kn = si_curvatures_at(fnf, st, branch) if st != 0 else (None, None)
        except CuspidalError:
            kg, kn = None, None
        rows.append((float(st), float(u0), label, rb, rc, None if kg is None else abs(kg), kn, mb, mc))
    return rows


def sweep_csv(fnf: FrontalNormalForm, lo, hi, count, *, workers=1) -> str:
    """CSV text of the invariant sweep; identical for any ``workers``."""
    sts = sweep_samples(lo, hi, count)
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    if not sts:
        return out.getvalue()
    series = bias_secondary_series(fnf)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda st: _sweep_point(fnf, series, st), sts))
    else:
        chunks = [_sweep_point(fnf, series, st) for st in sts]
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r[0], r[1]))
    for st, u0, label, rb, rc, kg, kn, mb, mc in rows:
        out.write(",".join((_fmt(st), _fmt(u0), label, _fmt(rb), _fmt(rc), _fmt(kg), _fmt(kn), mb, mc)))
        out.write("\n")
    return out.getvalue()


# -- mesh ------------------------------------------------------------------------------


def mesh_obj(germ: MapGerm, s, grid, extent, *, workers=1) -> str:
    """OBJ text: ``grid x grid`` vertices, row-major in ``u`` then ``v``, quad faces."""
    if grid < 2:
        raise InputError("grid must be at least 2")
    coords = [-extent + 2 * extent * i / (grid - 1) for i in range(grid)]
    comps = germ.to_float().components
    s = float(s)

    def row(i):
        u = coords[i]
        return [tuple(c.evaluate((u, v, s)) for c in comps) for v in coords]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(grid)))
    else:
        rows = [row(i) for i in range(grid)]
    out = io.StringIO()
    for r in rows:
        for x, y, z in r:
            out.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    for i in range(grid - 1):
        for j in range(grid - 1):
            a = i * grid + j + 1
            b = (i + 1) * grid + j + 1
            out.write(f"f {a} {b} {b + 1} {a + 1}\n")
    return out.getvalue()


def s2_sidecar(prep: Prepared, germ: MapGerm, s) -> dict:
    """Singular-set data of ``f(., ., s)`` for the mesh sidecar."""
    fnf = prep.frontal
    sets = singular_sets(fnf, s)
    comps = assemble(fnf).to_float().components
    points = []
    for u in sets.s2:
        points.append({"u": float(u), "v": 0.0,
                       "point": [float(c.evaluate((float(u), 0.0, float(s)))) for c in comps]})
    return {
        "s": float(s),
        "singular_set": sets.s1,
        "s2": points,
        "self_intersection": bool(points) and s != 0,
        "coordinates": "normal form",
        "from_frontal_part": not prep.obstruction.is_zero(),
    }


# -- argument handling ---------------------------------------------------------------


def _number(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _add_common(p, *, workers=False):
    p.add_argument("--order", type=int, default=None, help="jet truncation order")
    tower = p.add_mutually_exclusive_group()
    tower.add_argument("--exact", dest="exact", action="store_true", default=True,
                       help="exact rational arithmetic (default)")
    tower.add_argument("--float", dest="exact", action="store_false", help="double precision")
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")
    if workers:
        p.add_argument("--workers", type=int, default=1, help="worker threads")


def build_parser():
    parser = argparse.ArgumentParser(prog="cuspidal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="show diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="2-jet class, frontality and label at the origin")
    p.add_argument("germ", help="germ-spec path or builtin:NAME")
    _add_common(p)

    p = sub.add_parser("frontalize", help="write the minimal frontalization as a germ spec")
    p.add_argument("germ")
    _add_common(p)

    p = sub.add_parser("sweep", help="invariants at the singular points over a range of s~")
    p.add_argument("germ")
    p.add_argument("--range", nargs=2, type=_number, default=(Fraction(1, 100), Fraction(3, 10)),
                   metavar=("LO", "HI"))
    p.add_argument("--count", type=int, default=30)
    _add_common(p, workers=True)

    p = sub.add_parser("mesh", help="OBJ mesh of f(., ., s) with an S2 sidecar")
    p.add_argument("germ")
    p.add_argument("--s", type=_number, default=Fraction(0), dest="s")
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--extent", type=float, default=1.0)
    p.add_argument("--frontalize", action="store_true", help="mesh the minimal frontalization")
    p.add_argument("--no-sidecar", action="store_true")
    _add_common(p, workers=True)

    p = sub.add_parser("verify", help="run the self-verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="run only this suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="smaller samples")
    p.add_argument("--list", action="store_true", help="list suites and exit")

    p = sub.add_parser("export-builtin", help="write builtin germs as spec files")
    p.add_argument("name", nargs="?", help="builtin name (omit with --all)")
    p.add_argument("--all", action="store_true", help="export every builtin into --out DIR")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--out", default=None)
    return parser


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _run(args):
    if args.command == "verify":
        if args.list:
            for name, s in SUITES.items():
                print(f"{name:28s} {s.description}")
            return EXIT_OK
        results = run_suites(args.suite, seed=args.seed, quick=args.quick, stream=sys.stdout)
        failed = [r.name for r in results if not r.passed]
        total = sum(r.seconds for r in results)
        print(f"{len(results) - len(failed)}/{len(results)} suites passed in {total:.1f}s")
        return EXIT_VERIFY if failed else EXIT_OK

    if args.command == "export-builtin":
        if args.all:
            if not args.out:
                raise InputError("--all needs --out DIR")
            os.makedirs(args.out, exist_ok=True)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", UserWarning)
                for name in builtin_names():
                    fname = name.replace(":", "_").replace("+", "p").replace("-", "m") + ".json"
                    dump_germ_spec(assemble(builtin(name, args.order)), os.path.join(args.out, fname))
            return EXIT_OK
        if not args.name:
            raise InputError("give a builtin name or --all")
        _emit(germ_spec_text(assemble(builtin(args.name, args.order))), args.out)
        return EXIT_OK

    germ = load_germ(args.germ, args.order, args.exact)
    if args.command == "classify":
        _emit(classify_text(germ), args.out)
    elif args.command == "frontalize":
        prep = prepare(germ)
        _emit(germ_spec_text(assemble(prep.frontal)), args.out)
    elif args.command == "sweep":
        prep = prepare(germ, reduce=True)
        lo, hi = args.range
        _emit(sweep_csv(prep.frontal, lo, hi, args.count, workers=args.workers), args.out)
    elif args.command == "mesh":
        prep = prepare(germ)
        target = assemble(prep.frontal) if args.frontalize else germ
        _emit(mesh_obj(target, args.s, args.grid, args.extent, workers=args.workers), args.out)
        if args.out and not args.no_sidecar:
            data = s2_sidecar(prep, germ, args.s)
            with open(os.path.splitext(args.out)[0] + ".s2.json", "w", encoding="utf-8") as fh:
                json.dump(data, fh, indent=1, sort_keys=True)
                fh.write("\n")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except (InputError, CuspidalError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
