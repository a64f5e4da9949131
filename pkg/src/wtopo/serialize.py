"""JSON forms of the package's values.

Weights are exact strings (``"2/3"``, ``"inf"``, ``"(-1+1√2)/1"``); no floats
are read or written.  Labels that are tuples are written as JSON arrays and
read back as tuples, so every ``to_json`` output re-parses to an equal value.

Parse errors raise :class:`SchemaError`, whose ``pointer`` names the
offending field (for example ``matrix[1][0]``).
"""
from __future__ import annotations

import json
from fractions import Fraction

from . import rotation, wspace
from .dmetric import FiniteDeltaSpace, PointRelation
from .errors import ValidationError
from .fundcat import HoledPlane
from .paths import AnalyticModel, PLPath
from .wcat import FiniteWeightedCategory
from .weights import ext, fmt


class SchemaError(ValidationError):
    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer or '<root>'}: {message}")


def _at(pointer, fn, *args):
    try:
        return fn(*args)
    except SchemaError:
        raise
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise SchemaError(pointer, str(exc) or type(exc).__name__) from None


def _field(obj, key, pointer=""):
    if not isinstance(obj, dict):
        raise SchemaError(pointer, "expected a JSON object")
    if key not in obj:
        raise SchemaError(f"{pointer}.{key}" if pointer else key, "missing field")
    return obj[key]


def _list(value, pointer):
    if not isinstance(value, list):
        raise SchemaError(pointer, "expected a JSON array")
    return value


def weight_from_json(value, pointer=""):
    if isinstance(value, float):
        raise SchemaError(pointer, "weights must be exact strings, not floats")
    return _at(pointer, ext, value)


def rational_from_json(value, pointer=""):
    if isinstance(value, (float, bool)) or value is None:
        raise SchemaError(pointer, "expected an exact rational")
    return _at(pointer, Fraction, value)


def encode_label(x):
    if isinstance(x, tuple):
        return [encode_label(v) for v in x]
    return x


def decode_label(x):
    if isinstance(x, list):
        return tuple(decode_label(v) for v in x)
    return x


# delta spaces --------------------------------------------------------------------

def space_to_json(space: FiniteDeltaSpace) -> dict:
    return {"type": "finite_delta",
            "points": [encode_label(p) for p in space.points],
            "matrix": [[fmt(v) for v in row] for row in space.d]}


def space_from_json(obj) -> FiniteDeltaSpace:
    rows = _list(_field(obj, "matrix"), "matrix")
    n = len(rows)
    points = obj.get("points")
    points = [str(i) for i in range(n)] if points is None else [decode_label(p) for p in _list(points, "points")]
    if len(points) != n:
        raise SchemaError("points", f"expected {n} labels to match the matrix")
    matrix = []
    for i, row in enumerate(rows):
        row = _list(row, f"matrix[{i}]")
        if len(row) != n:
            raise SchemaError(f"matrix[{i}]", f"expected {n} entries")
        matrix.append([weight_from_json(v, f"matrix[{i}][{j}]") for j, v in enumerate(row)])
    return _at("points", FiniteDeltaSpace, tuple(points), matrix)


def relation_from_json(obj) -> PointRelation:
    pairs = _list(_field(obj, "pairs"), "pairs")
    out = []
    for k, p in enumerate(pairs):
        p = _list(p, f"pairs[{k}]")
        if len(p) != 2:
            raise SchemaError(f"pairs[{k}]", "expected two labels")
        out.append((decode_label(p[0]), decode_label(p[1])))
    return PointRelation(out)


# paths --------------------------------------------------------------------------

def path_to_json(path: PLPath) -> dict:
    m = path.model
    out = {"type": "path", "model": m.kind}
    if m.kind == "delta_interval":
        out["lo"], out["hi"] = fmt(m.lo), fmt(m.hi)
    if m.dim != 1:
        out["dim"] = m.dim
    if m.op:
        out["op"] = True
    out["times"] = [fmt(t) for t in path.times]
    if m.dim == 1:
        out["values"] = [fmt(v) for v in path.values]
    else:
        out["values"] = [[fmt(c) for c in v] for v in path.values]
    return out


def path_from_json(obj) -> PLPath:
    kind = _field(obj, "model")
    dim = obj.get("dim", 1)
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SchemaError("dim", "expected an integer")
    lo = hi = None
    if kind == "delta_interval":
        lo = rational_from_json(obj.get("lo", "0"), "lo")
        hi = rational_from_json(obj.get("hi", "1"), "hi")
    model = _at("model", AnalyticModel, kind, lo, hi, dim, bool(obj.get("op", False)))
    times = [rational_from_json(t, f"times[{i}]") for i, t in enumerate(_list(_field(obj, "times"), "times"))]
    values = []
    for i, v in enumerate(_list(_field(obj, "values"), "values")):
        if dim == 1:
            values.append(rational_from_json(v, f"values[{i}]"))
        else:
            v = _list(v, f"values[{i}]")
            values.append(tuple(rational_from_json(c, f"values[{i}][{j}]") for j, c in enumerate(v)))
    return _at("values", PLPath, model, tuple(times), tuple(values))


# weighted categories ----------------------------------------------------------------

def wcat_to_json(C: FiniteWeightedCategory) -> dict:
    return {
        "type": "wcat",
        "objects": [encode_label(x) for x in C.objects],
        "morphisms": [{"name": encode_label(m), "source": encode_label(s),
                       "target": encode_label(t), "weight": fmt(C.w(m))}
                      for m, (s, t) in C.morphisms.items()],
        "identities": [[encode_label(x), encode_label(i)] for x, i in C.identities.items()],
        "composition": [[encode_label(a), encode_label(b), encode_label(c)]
                        for (a, b), c in C.composition.items()],
    }


def wcat_from_json(obj) -> FiniteWeightedCategory:
    objects = [decode_label(x) for x in _list(_field(obj, "objects"), "objects")]
    mors, weight = {}, {}
    for k, m in enumerate(_list(_field(obj, "morphisms"), "morphisms")):
        p = f"morphisms[{k}]"
        name = decode_label(_field(m, "name", p))
        if name in mors:
            raise SchemaError(f"{p}.name", f"duplicate morphism {name!r}")
        mors[name] = (decode_label(_field(m, "source", p)), decode_label(_field(m, "target", p)))
        weight[name] = weight_from_json(_field(m, "weight", p), f"{p}.weight")
    ids_raw = _field(obj, "identities")
    if isinstance(ids_raw, dict):
        ids = {decode_label(x): decode_label(i) for x, i in ids_raw.items()}
    else:
        ids = {}
        for k, pair in enumerate(_list(ids_raw, "identities")):
            pair = _list(pair, f"identities[{k}]")
            if len(pair) != 2:
                raise SchemaError(f"identities[{k}]", "expected [object, morphism]")
            ids[decode_label(pair[0])] = decode_label(pair[1])
    comp = {}
    for k, row in enumerate(_list(_field(obj, "composition"), "composition")):
        row = _list(row, f"composition[{k}]")
        if len(row) != 3:
            raise SchemaError(f"composition[{k}]", "expected [first, second, composite]")
        comp[(decode_label(row[0]), decode_label(row[1]))] = decode_label(row[2])
    return _at("objects", FiniteWeightedCategory, tuple(objects), mors, ids, comp, weight)


# planes -----------------------------------------------------------------------------

def plane_to_json(plane: HoledPlane) -> dict:
    return {"type": "plane",
            "bounds": [fmt(v) for v in plane.bounds],
            "holes": [[fmt(v) for v in h] for h in plane.holes],
            "marked": [[fmt(v) for v in m] for m in plane.marked],
            "names": list(plane.names)}


def plane_from_json(obj) -> HoledPlane:
    bounds = [rational_from_json(v, f"bounds[{i}]") for i, v in enumerate(_list(_field(obj, "bounds"), "bounds"))]
    if len(bounds) != 2:
        raise SchemaError("bounds", "expected two coordinates")
    holes = []
    for k, h in enumerate(_list(obj.get("holes", []), "holes")):
        holes.append(tuple(rational_from_json(v, f"holes[{k}][{i}]")
                           for i, v in enumerate(_list(h, f"holes[{k}]"))))
    marked = []
    for k, m in enumerate(_list(obj.get("marked", []), "marked")):
        marked.append(tuple(rational_from_json(v, f"marked[{k}][{i}]")
                            for i, v in enumerate(_list(m, f"marked[{k}]"))))
    names = obj.get("names")
    if names is not None:
        names = tuple(str(n) for n in _list(names, "names"))
    return _at("holes", HoledPlane, tuple(bounds), tuple(holes), tuple(marked), names)


# chain w-spaces ---------------------------------------------------------------------

def materialize(X: wspace.ChainWSpace, max_len: int | None = None) -> wspace.ChainWSpace:
    """Tabled copy of any chain w-space, exact on walks up to ``max_len``."""
    n = max_len if max_len is not None else X.check_len
    table = {w: X.weight(w) for w in wspace.walks(X, n)}
    return wspace.tabled(X.vertices, X.edges, table, max(n, 1))


def wspace_to_json(X: wspace.ChainWSpace) -> dict:
    if X.mode not in (wspace.LINEAR, wspace.TABLED):
        X = materialize(X)
    out = {"type": "wspace",
           "vertices": [encode_label(v) for v in X.vertices],
           "edges": [[encode_label(a), encode_label(b)] for a, b in X.edges]}
    if X.mode == wspace.LINEAR:
        out["weights"] = {"mode": "linear", "edge_weights": [fmt(w) for w in X.edge_weights]}
    else:
        out["weights"] = {"mode": "tabled", "bound": X.bound,
                          "table": {",".join(map(str, k)): fmt(v) for k, v in sorted(X.table.items())}}
    return out


def wspace_from_json(obj) -> wspace.ChainWSpace:
    verts = tuple(decode_label(v) for v in _list(_field(obj, "vertices"), "vertices"))
    edges = []
    for k, e in enumerate(_list(_field(obj, "edges"), "edges")):
        e = _list(e, f"edges[{k}]")
        if len(e) != 2:
            raise SchemaError(f"edges[{k}]", "expected [source, target]")
        edges.append((decode_label(e[0]), decode_label(e[1])))
    spec = _field(obj, "weights")
    mode = _field(spec, "mode", "weights")
    if mode == "linear":
        ws = [weight_from_json(w, f"weights.edge_weights[{i}]")
              for i, w in enumerate(_list(_field(spec, "edge_weights", "weights"), "weights.edge_weights"))]
        return _at("edges", wspace.linear, verts, edges, ws)
    if mode == "tabled":
        raw = _field(spec, "table", "weights")
        if not isinstance(raw, dict):
            raise SchemaError("weights.table", "expected an object keyed by edge-index sequences")
        table = {}
        for key, w in raw.items():
            p = f"weights.table[{key!r}]"
            walk = _at(p, lambda s: tuple(int(t) for t in s.split(",")), key)
            table[walk] = weight_from_json(w, p)
        bound = spec.get("bound")
        return _at("weights.table", wspace.tabled, verts, edges, table, bound)
    raise SchemaError("weights.mode", f"unknown mode {mode!r}")


# rotation ---------------------------------------------------------------------------

def quad_to_json(x) -> dict:
    return rotation.parse_quad(x).to_dict()


def theta_from_json(obj):
    raw = _field(obj, "theta") if isinstance(obj, dict) and "theta" in obj else obj
    return _at("theta", rotation._irrational, raw)


def gelement_to_json(g: rotation.GElement, theta) -> dict:
    return {"m": g.m, "n": g.n, "weight": fmt(rotation.g_weight(g, theta))}


# dispatch ---------------------------------------------------------------------------

KINDS = {
    "finite_delta": space_from_json,
    "path": path_from_json,
    "wcat": wcat_from_json,
    "plane": plane_from_json,
    "wspace": wspace_from_json,
    "theta": theta_from_json,
}


def kind_of(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("", "expected a JSON object")
    if "type" in obj:
        if obj["type"] not in KINDS:
            raise SchemaError("type", f"unknown type {obj['type']!r}")
        return obj["type"]
    for key, kind in (("matrix", "finite_delta"), ("model", "path"), ("composition", "wcat"),
                      ("bounds", "plane"), ("vertices", "wspace"), ("theta", "theta")):
        if key in obj:
            return kind
    raise SchemaError("", "cannot tell what this document describes")


def load(obj):
    return KINDS[kind_of(obj)](obj)


def to_json(value) -> dict:
    if isinstance(value, FiniteDeltaSpace):
        return space_to_json(value)
    if isinstance(value, PLPath):
        return path_to_json(value)
    if isinstance(value, FiniteWeightedCategory):
        return wcat_to_json(value)
    if isinstance(value, HoledPlane):
        return plane_to_json(value)
    if isinstance(value, wspace.ChainWSpace):
        return wspace_to_json(value)
    if isinstance(value, rotation.QuadNumber):
        return {"type": "theta", "theta": quad_to_json(value)}
    raise TypeError(f"no JSON form for {type(value).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False)
