"""The ``wtopo`` command line tool.

Each verb reads JSON documents, runs one operation and prints either a short
table or a JSON document.  Exit status: 0 on success, 2 on unreadable or
invalid input (the message names the offending field), 1 when an enumeration
hits its size cap.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import dmetric, fundcat, paths, rotation, serialize, wcat, wspace
from .errors import SizeLimitExceeded, WtopoError
from .serialize import SchemaError, dumps
from .weights import INF, approx, fmt

EXIT_OK, EXIT_CAP, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _load(path, kind=None):
    obj = _read(path)
    try:
        found = serialize.kind_of(obj)
        if kind is not None and found not in ((kind,) if isinstance(kind, str) else kind):
            raise SchemaError("type", f"expected {kind}, found {found}")
        return serialize.load(obj), obj
    except WtopoError as exc:
        raise InputError(f"{path}: {exc}") from None


def _w(x) -> str:
    """Exact weight, with a marked decimal when it is not an integer."""
    s = fmt(x)
    if x is INF or s.lstrip("-").isdigit():
        return s
    return f"{s} (approx {approx(x)})"


def _label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_label(v) for v in x) + ")"
    return str(x)


def _set(xs) -> str:
    return "{" + ", ".join(_label(x) for x in xs) + "}"


def _space_table(space) -> str:
    labels = [_label(p) for p in space.points]
    cells = [[fmt(v) for v in row] for row in space.d]
    width = max([len(s) for s in labels] + [len(c) for row in cells for c in row])
    lines = [" " * width + " | " + " ".join(s.rjust(width) for s in labels)]
    for s, row in zip(labels, cells):
        lines.append(s.rjust(width) + " | " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


# verbs -----------------------------------------------------------------------------

def cmd_validate(args):
    value, obj = _load(args.file)
    kind = serialize.kind_of(obj)
    try:
        if kind == "finite_delta":
            dmetric.validate(value)
        elif kind == "wcat":
            wcat.validate_wcat(value)
        elif kind == "wspace":
            wspace.validate_wspace(value)
    except WtopoError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    return {"valid": True, "type": kind}, f"valid {kind}"


def cmd_dmetric_op(args):
    spaces = [_load(f, "finite_delta")[0] for f in args.files]
    for f, s in zip(args.files, spaces):
        try:
            dmetric.validate(s)
        except WtopoError as exc:
            raise InputError(f"{f}: {exc}") from None
    op = args.op
    one = spaces[0]
    if op in ("product", "tensor", "sum"):
        out = getattr(dmetric, op)(spaces)
    elif op == "quotient":
        if not args.relation:
            raise InputError("quotient needs --relation FILE")
        try:
            rel = serialize.relation_from_json(_read(args.relation))
            out, _ = dmetric.quotient(one, rel)
        except WtopoError as exc:
            raise InputError(f"{args.relation}: {exc}") from None
    elif op == "internal-hom":
        if len(spaces) != 2:
            raise InputError("internal-hom needs two spaces")
        out = dmetric.internal_hom(spaces[0], spaces[1], args.cap or dmetric.DEFAULT_HOM_CAP)
    elif op == "scale":
        try:
            out = dmetric.scale(one, serialize.rational_from_json(args.factor, "--factor"))
        except WtopoError as exc:
            raise InputError(str(exc)) from None
    else:
        out = getattr(dmetric, op)(one)
    return serialize.space_to_json(out), _space_table(out)


def cmd_paths_op(args):
    ps = [_load(f, "path")[0] for f in args.files]
    op = args.op
    if op in ("span", "length", "lipschitz"):
        fn = {"span": paths.span, "length": paths.length,
              "lipschitz": paths.lipschitz_weight_of_path}[op]
        v = fn(ps[0])
        return {op: fmt(v)}, f"{op}: {_w(v)}"
    if op == "reflect":
        out = paths.reflect(ps[0])
    else:
        if len(ps) != 2:
            raise InputError("concatenate needs two paths")
        try:
            out = paths.concatenate(ps[0], ps[1])
        except WtopoError as exc:
            raise InputError(str(exc)) from None
    doc = serialize.path_to_json(out)
    return doc, dumps(doc)


def _plane(args):
    plane, _ = _load(args.file, "plane")
    if args.marks:
        names = [n.strip() for n in args.marks.split(",")]
        try:
            pts = [plane.point(n) for n in names]
        except WtopoError as exc:
            raise InputError(str(exc)) from None
        plane = plane.with_marks(pts, names)
    return plane


def cmd_fundcat(args):
    plane = _plane(args)
    C = fundcat.fundamental_category(plane, args.cap or fundcat.DEFAULT_PATH_CAP)
    gens = fundcat.generating_arrows(C)
    lines = [f"objects: {', '.join(map(str, C.objects))}"]
    homs = []
    for x in C.objects:
        for y in C.objects:
            ms = C.hom(x, y)
            if x == y and len(ms) == 1:
                continue
            if not ms:
                continue
            ws = [C.w(m) for m in ms]
            noun = "class" if len(ms) == 1 else "classes"
            if len(ms) == 1:
                wtxt = f"weight {fmt(ws[0])}"
            elif len(set(ws)) == 1:
                wtxt = f"weight {fmt(ws[0])} each"
            else:
                wtxt = "weights " + ", ".join(fmt(w) for w in ws)
            lines.append(f"hom({x},{y}): {len(ms)} {noun}, {wtxt}")
            homs.append({"source": x, "target": y, "weights": [fmt(w) for w in ws]})
    gw = sorted({C.w(m) for m in gens})
    if len(gw) == 1:
        lines.append(f"generators: {len(gens)}, weight {fmt(gw[0])} each")
    else:
        lines.append(f"generators: {len(gens)}, weights {', '.join(fmt(w) for w in gw)}")
    doc = {"category": serialize.wcat_to_json(C), "homs": homs,
           "generators": [{"name": g, "weight": fmt(C.w(g))} for g in gens]}
    return doc, "\n".join(lines)


def cmd_spectrum(args):
    value, obj = _load(args.file, ("wcat", "plane"))
    if isinstance(value, fundcat.HoledPlane):
        C = fundcat.fundamental_category(value, args.cap or fundcat.DEFAULT_PATH_CAP)
    else:
        try:
            C = wcat.validate_wcat(value)
        except WtopoError as exc:
            raise InputError(f"{args.file}: {exc}") from None
    fut = wcat.future_spectrum(C, args.elementary)
    past = wcat.past_spectrum(C, args.elementary)
    doc = {"future": [serialize.encode_label(x) for x in fut.objects],
           "past": [serialize.encode_label(x) for x in past.objects],
           "future_reflector_weight": fmt(fut.reflection.reflector_weight),
           "future_unit_weight": fmt(fut.reflection.unit_weight),
           "past_reflector_weight": fmt(past.reflection.reflector_weight),
           "past_unit_weight": fmt(past.reflection.unit_weight),
           "elementary": args.elementary}
    text = f"sp+ = {_set(fut.objects)}; sp- = {_set(past.objects)}"
    if fut.multiple or past.multiple:
        text += "\nnote: several minimal subsets; the first in object order is shown"
    return doc, text


def _wspace_input(path):
    value, obj = _load(path, ("wspace", "finite_delta"))
    adm = None
    if isinstance(value, dmetric.FiniteDeltaSpace):
        raw = obj.get("admissible")
        if raw is None:
            raise InputError(f"{path}: admissible: missing field (needed for a metric)")
        adm = [tuple(serialize.decode_label(v) for v in e) for e in raw]
    return value, adm


def cmd_wspace_op(args):
    X, adm = _wspace_input(args.files[0])
    op = args.op
    n = args.max_len
    try:
        if isinstance(X, dmetric.FiniteDeltaSpace):
            dmetric.validate(X)
            if op == "classify":
                c = wspace.classify(X, adm, n).as_dict()
                return c, "; ".join(f"{k}: {'yes' if v else 'no'}" for k, v in c.items())
            if op == "galois":
                rep = wspace.galois_check_dual(X, adm, n)
            elif op in ("sp", "L"):
                out = (wspace.sp_of if op == "sp" else wspace.L_of)(X, adm)
                doc = serialize.wspace_to_json(out)
                return doc, dumps(doc)
            else:
                raise InputError(f"{op} needs a chain w-space, not a metric")
        else:
            wspace.validate_wspace(X, n)
            if op == "classify":
                c = wspace.classify(X, None, n).as_dict()
                return c, "; ".join(f"{k}: {'yes' if v else 'no'}" for k, v in c.items())
            if op == "galois":
                rep = wspace.galois_check(X, n)
            elif op == "delta":
                out = wspace.delta_of(X)
                return serialize.space_to_json(out), _space_table(out)
            elif op in ("linearize", "opposite"):
                out = getattr(wspace, op)(X)
                doc = serialize.wspace_to_json(out)
                return doc, dumps(doc)
            elif op in ("product", "tensor", "sum"):
                others = [_load(f, "wspace")[0] for f in args.files[1:]]
                out = getattr(wspace, op)([X] + others)
                doc = serialize.wspace_to_json(serialize.materialize(out, n) if n else out)
                return doc, dumps(doc)
            elif op == "quotient":
                if not args.relation:
                    raise InputError("quotient needs --relation FILE")
                rel = serialize.relation_from_json(_read(args.relation))
                out = wspace.quotient(X, rel)
                doc = serialize.wspace_to_json(serialize.materialize(out, n))
                return doc, dumps(doc)
            else:
                raise InputError(f"{op} needs a metric with admissible edges")
    except WtopoError as exc:
        if isinstance(exc, SizeLimitExceeded):
            raise
        raise InputError(str(exc)) from None
    doc = {"ok": rep.ok, "checks": rep.checks,
           "witnesses": {k: serialize.encode_label(v) for k, v in rep.witnesses.items()}}
    lines = [f"{'ok  ' if v else 'FAIL'} {k}" for k, v in rep.checks.items()]
    return doc, "\n".join(lines)


def _theta(path):
    return _load(path, "theta")[0]


def cmd_rotation_classify(args):
    a, b = _theta(args.first), _theta(args.second)
    iso = rotation.classify_isometric(a, b)
    lip = rotation.classify_lipschitz(a, b)
    text = f"isometric: {'yes' if iso.holds else 'no'}; lipschitz: {'yes' if lip.holds else 'no'}"
    if iso.holds:
        sign, k = iso.certificate
        text += f"\nisometric certificate: theta' = {k} {sign} theta"
    if lip.holds:
        text += f"\nlipschitz certificate: {' '.join(lip.certificate) or '(identity)'}"
    doc = {"theta": a.to_dict(), "theta2": b.to_dict(),
           "isometric": iso.holds,
           "isometric_certificate": list(iso.certificate) if iso.holds else None,
           "lipschitz": lip.holds,
           "lipschitz_certificate": lip.certificate if lip.holds else None}
    return doc, text


def cmd_rotation_monoid(args):
    theta = _theta(args.file)
    try:
        if args.weight_cap is not None:
            cap = rotation.parse_quad(args.weight_cap)
            elems = list(rotation.fundamental_monoid(theta, cap, args.degree).elements)
        else:
            elems = rotation.enumerate_g_plus(theta, args.count, args.degree)
    except WtopoError as exc:
        raise InputError(str(exc)) from None
    lines = [f"degree cutoff |n| <= {args.degree}"]
    for g in elems:
        lines.append(f"{g.m:+d} {g.n:+d}*theta  weight {_w(rotation.g_weight(g, theta))}")
    doc = {"theta": theta.to_dict(), "degree": args.degree,
           "elements": [serialize.gelement_to_json(g, theta) for g in elems]}
    return doc, "\n".join(lines)


def cmd_vankampen(args):
    cap = args.cap or fundcat.DEFAULT_PATH_CAP
    jobs = []
    if args.file:
        plane = _plane(args)
        if args.cut:
            cut = tuple(serialize.rational_from_json(c, "--cut") for c in args.cut)
            jobs.append(("input", plane, None, cut))
        elif plane == fundcat.square_annulus():
            jobs.append(("input", plane, fundcat.annulus_pieces(), None))
        else:
            jobs.append(("input", plane, None, None))
    rng = random.Random(args.seed)
    for k in range(args.random):
        plane, cut = fundcat.random_plane(rng, 1 + k % 2)
        jobs.append((f"random {k + 1}", plane, None, cut))
    if not jobs:
        raise InputError("give a plane file or --random N")
    lines, docs = [], []
    for name, plane, pieces, cut in jobs:
        try:
            rep = fundcat.van_kampen_check(plane, pieces, cut, cap)
        except WtopoError as exc:
            if isinstance(exc, SizeLimitExceeded):
                raise
            raise InputError(f"{name}: {exc}") from None
        lines.append(f"{name}: {'ok' if rep.ok else 'FAIL'} "
                     f"({len(rep.whole.objects)} objects, {len(rep.whole.morphisms)} arrows)")
        docs.append({"name": name, "ok": rep.ok, "isomorphic": rep.isomorphic,
                     "weights_equal": rep.weights_equal,
                     "plane": serialize.plane_to_json(plane),
                     "cut": [fmt(c) for c in cut] if cut else None,
                     "arrows": len(rep.whole.morphisms)})
    return {"checks": docs, "ok": all(d["ok"] for d in docs)}, "\n".join(lines)


# parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cap", type=int, default=None, help="size cap for enumerations")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    p = argparse.ArgumentParser(prog="wtopo", description="Exact weighted directed topology.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a JSON document")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("dmetric-op", parents=[common], help="operations on delta spaces")
    s.add_argument("op", choices=("product", "tensor", "sum", "quotient", "symmetrize",
                                  "opposite", "scale", "internal-hom"))
    s.add_argument("files", nargs="+")
    s.add_argument("--relation")
    s.add_argument("--factor", default="1")
    s.set_defaults(run=cmd_dmetric_op)

    s = sub.add_parser("paths-op", parents=[common], help="span, length and path operations")
    s.add_argument("op", choices=("span", "length", "lipschitz", "reflect", "concatenate"))
    s.add_argument("files", nargs="+")
    s.set_defaults(run=cmd_paths_op)

    s = sub.add_parser("fundcat", parents=[common], help="fundamental weighted category of a plane")
    s.add_argument("file")
    s.add_argument("--marks", help="comma separated names of marked points to use")
    s.set_defaults(run=cmd_fundcat)

    s = sub.add_parser("spectrum", parents=[common], help="future and past spectra")
    s.add_argument("file")
    s.add_argument("--elementary", action="store_true",
                   help="require reflector and unit weights <= 1")
    s.set_defaults(run=cmd_spectrum)

    s = sub.add_parser("wspace-op", parents=[common], help="chain w-space operations")
    s.add_argument("op", choices=("delta", "linearize", "opposite", "classify", "galois",
                                  "product", "tensor", "sum", "quotient", "sp", "L"))
    s.add_argument("files", nargs="+")
    s.add_argument("--relation")
    s.add_argument("--max-len", type=int, default=None, help="walk length for checks")
    s.set_defaults(run=cmd_wspace_op)

    s = sub.add_parser("rotation-classify", parents=[common], help="compare two rotation spaces")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(run=cmd_rotation_classify)

    s = sub.add_parser("rotation-monoid", parents=[common], help="list the weighted monoid G+")
    s.add_argument("file")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--weight-cap", default=None)
    s.add_argument("--degree", type=int, default=rotation.DEFAULT_DEGREE)
    s.set_defaults(run=cmd_rotation_monoid)

    s = sub.add_parser("vankampen", parents=[common], help="check gluing of fundamental categories")
    s.add_argument("file", nargs="?")
    s.add_argument("--cut", nargs=2, metavar=("C1", "C2"))
    s.add_argument("--marks")
    s.add_argument("--random", type=int, default=0, help="also check N random planes")
    s.set_defaults(run=cmd_vankampen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for flag, least in (("cap", 1), ("max_len", 1), ("count", 0), ("degree", 0), ("random", 0)):
        value = getattr(args, flag, None)
        if value is not None and value < least:
            print(f"error: --{flag.replace('_', '-')} must be at least {least}", file=sys.stderr)
            return EXIT_INPUT
    try:
        doc, text = args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except WtopoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write((dumps(doc) if args.format == "json" else text) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
