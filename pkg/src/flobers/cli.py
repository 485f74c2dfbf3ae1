"""Command line front end.

Exit status: 0 on success, 1 when a diagram violates the axioms, 2 on
malformed input.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import kflober
from .arrangement import Arrangement, collinear, enumerate_faces
from .diagram import (HyperbolicDiagram, NontrivialMonodromy, WrongArrangement, cohomology_1d,
                      decompose_1d, monodromy_1d, to_phi_psi, validate)
from .linalg import rational_to_json
from .roots import (RankOutOfRange, build_root_datum, desingularization_sign,
                    parabolic_and_levi, weyl_of)
from .sl3 import format_report, sl3_report

SIGN_KEY = re.compile(r"^[-0+]+$")


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load(kind, path):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        return kind.from_json(data)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(obj: dict, path: str | None, out) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path in (None, "-"):
        out.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _rat_list(v):
    return [rational_to_json(x) for x in v]


# arr

def cmd_arr_faces(args, out):
    arr = _load(Arrangement, args.input)
    poset = enumerate_faces(arr)
    if args.json:
        _dump({"faces": [{"signs": f.key, "dim": f.dim} for f in poset],
               "counts": {str(d): len(poset.of_dim(d)) for d in range(arr.dim + 1)}}, out)
    else:
        for f in poset:
            out.write(f"{f.key}\t{f.dim}\n")
        out.write(f"{len(poset)} faces, {len(poset.chambers)} chambers\n")
    return 0


def cmd_arr_collinear(args, out):
    arr = _load(Arrangement, args.input)
    poset = enumerate_faces(arr)
    faces = []
    for key in args.faces:
        if not SIGN_KEY.match(key) or len(key) != arr.size:
            raise InputError(f"face {key!r} is not a sign vector of length {arr.size}")
        if key not in poset:
            raise InputError(f"face {key!r} is not a face of the arrangement")
        faces.append(poset.get(key))
    result = collinear(arr, *faces)
    if args.json:
        _dump({"faces": args.faces, "collinear": result}, out)
    else:
        out.write(("collinear" if result else "not collinear") + "\n")
    return 0


# diagram

def cmd_diagram_validate(args, out):
    D = _load(HyperbolicDiagram, args.input)
    report = validate(D)
    if args.json:
        _dump({"passed": report.passed,
               "violations": [{"condition": v.condition, "faces": list(v.faces),
                               "detail": v.detail} for v in report.violations]}, out)
    elif report.passed:
        out.write("passed\n")
    else:
        for v in report.violations:
            out.write(f"{v}\n")
        out.write(f"failed: {len(report.violations)} violation(s)\n")
    return 0 if report.passed else 1


def cmd_diagram_cohomology(args, out):
    D = _load(HyperbolicDiagram, args.input)
    try:
        h = cohomology_1d(D)
        t = monodromy_1d(D)
    except WrongArrangement as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        _dump({**h._asdict(), "monodromy": t.to_json()}, out)
    else:
        out.write(f"H^0 = {h.h0}  H^1 = {h.h1}  H^1_c = {h.h1c}  H^2_c = {h.h2c}\n")
        out.write(f"monodromy:\n{t}\n")
    return 0


def cmd_diagram_decompose(args, out):
    D = _load(HyperbolicDiagram, args.input)
    report = validate(D)
    if not report.passed:
        for v in report.violations:
            out.write(f"{v}\n")
        return 1
    try:
        datum = to_phi_psi(D)
        m = decompose_1d(datum)
    except WrongArrangement as exc:
        raise InputError(str(exc)) from exc
    except NontrivialMonodromy as exc:
        out.write(f"cannot decompose: {exc}\n")
        return 1
    if args.json:
        _dump({"dim_phi": datum.dim_phi, "dim_psi": datum.dim_psi,
               "u": datum.u.to_json(), "v": datum.v.to_json(), **m._asdict()}, out)
    else:
        out.write(f"dim Phi = {datum.dim_phi}, dim Psi = {datum.dim_psi}\n")
        out.write(f"skyscraper {m.skyscraper}, constant {m.constant}, "
                  f"Rj_* {m.rj_star}, j_! {m.j_shriek}\n")
    return 0


# flober

def cmd_flober_atiyah(args, out):
    D = kflober.atiyah_flober()
    _emit(D.to_json(), args.emit, out)
    return 0


def cmd_flober_reduce_p1(args, out):
    v = kflober.reduce_p1(args.i)
    if args.json:
        _dump({"basis": list(kflober.P1_BASIS), "coefficients": _rat_list(v)}, out)
    else:
        out.write(" ".join(str(x) for x in v) + "\n")
    return 0


def cmd_flober_reduce_p1xp1(args, out):
    v = kflober.reduce_p1xp1(args.i, args.j)
    if args.json:
        _dump({"basis": list(kflober.P1XP1_BASIS), "coefficients": _rat_list(v)}, out)
    else:
        out.write(" ".join(str(x) for x in v) + "\n")
    return 0


# root

def _root_datum(args):
    if args.type != "A":
        raise InputError(f"only type A is supported, got {args.type!r}")
    try:
        return build_root_datum(args.rank)
    except RankOutOfRange as exc:
        raise InputError(str(exc)) from exc


def cmd_root_build(args, out):
    R = _root_datum(args)
    _emit(R.arrangement.to_json(), args.emit, out)
    return 0


def _root_name(a):
    return f"e{a[0]}-e{a[1]}"


def cmd_root_cells(args, out):
    R = _root_datum(args)
    rows = []
    for f in R.arrangement.poset:
        par, levi = parabolic_and_levi(R, f)
        row = {"face": f.key, "dim": f.dim,
               "parabolic": sorted(_root_name(a) for a in par),
               "levi": sorted(_root_name(a) for a in levi)}
        if f.dim == R.rank:
            row["weyl"] = list(weyl_of(R, f))
        rows.append(row)
    if args.json:
        _dump({"positive_roots": [_root_name(a) for a in R.positive_roots], "cells": rows}, out)
    else:
        out.write("hyperplanes: " + " ".join(_root_name(a) for a in R.positive_roots) + "\n")
        for row in rows:
            w = " w=" + "".join(map(str, row["weyl"])) if "weyl" in row else ""
            out.write(f"{row['face']}\t{row['dim']}\t|P|={len(row['parabolic'])}\t"
                      f"levi={{{', '.join(row['levi'])}}}{w}\n")
    return 0


def cmd_root_report(args, out):
    if args.algebra != "sl3":
        raise InputError(f"only the sl3 report exists, got {args.algebra!r}")
    report = sl3_report()
    if args.json:
        _dump(report, out)
    else:
        out.write(format_report(report) + "\n")
    return 0


def _parse_perm(text: str, n: int) -> tuple[int, ...]:
    parts = text.split(",") if "," in text else list(text)
    try:
        w = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"bad permutation {text!r}") from exc
    if sorted(w) != list(range(1, n + 1)):
        raise InputError(f"{text!r} is not a permutation of 1..{n}")
    return w


def cmd_root_desing(args, out):
    R = _root_datum(args)
    w = _parse_perm(args.w, R.n)
    if not 1 <= args.root <= len(R.positive_roots):
        raise InputError(f"root index must be in 1..{len(R.positive_roots)}")
    alpha = R.positive_roots[args.root - 1]
    sign = desingularization_sign(R, w, alpha)
    if args.json:
        _dump({"w": list(w), "root": _root_name(alpha), "sign": sign}, out)
    else:
        out.write(f"{sign}\n")
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    inp = argparse.ArgumentParser(add_help=False)
    inp.add_argument("-i", dest="input", required=True, help="input file, '-' for stdin")
    emit = argparse.ArgumentParser(add_help=False)
    emit.add_argument("--emit", help="output file (default: stdout)")

    p = argparse.ArgumentParser(prog="flobers")
    p.add_argument("--json", dest="json_global", action="store_true", help="machine-readable output")
    top = p.add_subparsers(dest="group", required=True)

    arr = top.add_parser("arr", help="hyperplane arrangements").add_subparsers(dest="cmd", required=True)
    s = arr.add_parser("faces", parents=[common, inp])
    s.set_defaults(func=cmd_arr_faces)
    s = arr.add_parser("collinear", parents=[common, inp])
    s.add_argument("faces", nargs=3, metavar="FACE")
    s.set_defaults(func=cmd_arr_collinear)

    dg = top.add_parser("diagram", help="perverse-sheaf diagrams").add_subparsers(dest="cmd", required=True)
    for name, fn in (("validate", cmd_diagram_validate), ("cohomology", cmd_diagram_cohomology),
                     ("decompose", cmd_diagram_decompose)):
        dg.add_parser(name, parents=[common, inp]).set_defaults(func=fn)

    fl = top.add_parser("flober", help="K-theory of the Atiyah flop").add_subparsers(dest="cmd", required=True)
    fl.add_parser("atiyah", parents=[common, emit]).set_defaults(func=cmd_flober_atiyah)
    s = fl.add_parser("reduce-p1", parents=[common])
    s.add_argument("i", type=int)
    s.set_defaults(func=cmd_flober_reduce_p1)
    s = fl.add_parser("reduce-p1xp1", parents=[common])
    s.add_argument("i", type=int)
    s.add_argument("j", type=int)
    s.set_defaults(func=cmd_flober_reduce_p1xp1)

    rt = top.add_parser("root", help="type A root data").add_subparsers(dest="cmd", required=True)
    for name, fn, extra in (("build", cmd_root_build, [emit]), ("cells", cmd_root_cells, [])):
        s = rt.add_parser(name, parents=[common, *extra])
        s.add_argument("type")
        s.add_argument("rank", type=int)
        s.set_defaults(func=fn)
    s = rt.add_parser("report", parents=[common])
    s.add_argument("algebra")
    s.set_defaults(func=cmd_root_report)
    s = rt.add_parser("desing", parents=[common])
    s.add_argument("type")
    s.add_argument("rank", type=int)
    s.add_argument("w", help="permutation in one-line notation, e.g. 213 or 2,1,3")
    s.add_argument("root", type=int, help="1-based index into the positive roots")
    s.set_defaults(func=cmd_root_desing)
    return p


def _protect_sign_keys(argv: list[str]) -> list[str]:
    """Put ``--`` in front of face keys such as ``-0+`` so argparse keeps them positional."""
    at = next((k for k in range(len(argv) - 1) if argv[k:k + 2] == ["arr", "collinear"]), None)
    if at is None:
        return argv
    out, rest = argv[:at + 2], argv[at + 2:]
    keys, opts = [], []
    k = 0
    while k < len(rest):
        tok = rest[k]
        if tok == "-i" and k + 1 < len(rest):
            opts += [tok, rest[k + 1]]
            k += 2
        elif tok == "--":
            keys += rest[k + 1:]
            break
        elif SIGN_KEY.match(tok):
            keys.append(tok)
            k += 1
        else:
            opts.append(tok)
            k += 1
    return out + opts + ["--"] + keys


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = make_parser()
    try:
        args = parser.parse_args(_protect_sign_keys(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False) or args.json_global
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
