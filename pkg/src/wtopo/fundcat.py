"""Fundamental weighted categories of directed planes with rectangular holes.

The plane is ``[0, A] x [0, B]`` with the additive directed distance
``(y1 - x1) + (y2 - x2)`` on comparable points.  Holes are open rectangles, so
their boundaries stay traversable.  Directed paths are modelled by monotone
staircases on the grid spanned by all relevant coordinates, and homotopy by
flipping a staircase across a grid cell that lies in the space.

Two staircases with common ends are flip-equivalent exactly when they have the
same set of forbidden cells below them; within a column that set is fixed by
its size.  Classes are therefore labelled by the tuple of per-column counts,
which makes enumeration a dynamic program over grid nodes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CoverViolation, SizeLimitExceeded, UnknownLabel, ValidationError
from .paths import AnalyticModel, PLPath, length as path_length
from .wcat import (FiniteWeightedCategory, Pushout, WFunctor, find_isomorphism,
                   mediating_functor, pushout_wcat)
from .weights import ExtWeight

DEFAULT_PATH_CAP = 10**6


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("use exact rationals, not floats")
    return Fraction(x)


def _point_name(p) -> str:
    return "(" + ",".join(str(c) for c in p) + ")"


@dataclass(frozen=True)
class HoledPlane:
    bounds: tuple
    holes: tuple = ()
    marked: tuple = ()
    names: tuple | None = None

    def __post_init__(self):
        A, B = (_q(v) for v in self.bounds)
        if A <= 0 or B <= 0:
            raise ValidationError("bounds must be positive")
        holes = tuple(tuple(_q(v) for v in h) for h in self.holes)
        for h in holes:
            if len(h) != 4:
                raise ValidationError(f"hole {h} needs four coordinates")
            x0, y0, x1, y1 = h
            if not (0 <= x0 < x1 <= A and 0 <= y0 < y1 <= B):
                raise ValidationError(f"hole {h} is empty or leaves the bounds")
        for a in range(len(holes)):
            for b in range(a + 1, len(holes)):
                p, q = holes[a], holes[b]
                if p[0] <= q[2] and q[0] <= p[2] and p[1] <= q[3] and q[1] <= p[3]:
                    raise ValidationError(f"holes {a} and {b} have touching closures")
        marked = tuple(tuple(_q(v) for v in m) for m in self.marked)
        for m in marked:
            if len(m) != 2 or not (0 <= m[0] <= A and 0 <= m[1] <= B):
                raise ValidationError(f"marked point {m} is outside the bounds")
            for h in holes:
                if h[0] < m[0] < h[2] and h[1] < m[1] < h[3]:
                    raise ValidationError(f"marked point {m} is inside a hole")
        if len(set(marked)) != len(marked):
            raise ValidationError("marked points must be distinct")
        names = tuple(self.names) if self.names is not None else tuple(_point_name(m) for m in marked)
        if len(names) != len(marked) or len(set(names)) != len(names):
            raise ValidationError("names must be distinct, one per marked point")
        object.__setattr__(self, "bounds", (A, B))
        object.__setattr__(self, "holes", holes)
        object.__setattr__(self, "marked", marked)
        object.__setattr__(self, "names", names)

    def point(self, name):
        try:
            return self.marked[self.names.index(name)]
        except ValueError:
            raise UnknownLabel(name) from None

    def with_marks(self, marked, names=None) -> "HoledPlane":
        return HoledPlane(self.bounds, self.holes, tuple(marked), names)

    def rotated(self) -> "HoledPlane":
        """Image under ``(x, y) -> (A - x, B - y)``, which reverses direction."""
        A, B = self.bounds
        holes = tuple((A - x1, B - y1, A - x0, B - y0) for x0, y0, x1, y1 in self.holes)
        return HoledPlane(self.bounds, holes, tuple((A - x, B - y) for x, y in self.marked),
                          self.names)

    def in_hole(self, x, y) -> bool:
        return any(h[0] < x < h[2] and h[1] < y < h[3] for h in self.holes)


def square_annulus() -> HoledPlane:
    t, tt = Fraction(1, 3), Fraction(2, 3)
    return HoledPlane((1, 1), ((t, t, tt, tt),), ((0, 0), (t, t), (tt, tt), (1, 1)),
                      ("0", "p", "q", "1"))


def refine_grid(plane: HoledPlane, extra_x: Sequence = (), extra_y: Sequence = ()) -> tuple:
    """Sorted coordinates from bounds, hole corners, marks and extras."""
    A, B = plane.bounds
    xs = {Fraction(0), A}
    ys = {Fraction(0), B}
    for x0, y0, x1, y1 in plane.holes:
        xs |= {x0, x1}
        ys |= {y0, y1}
    for x, y in plane.marked:
        xs.add(x)
        ys.add(y)
    xs |= {_q(v) for v in extra_x}
    ys |= {_q(v) for v in extra_y}
    return sorted(xs), sorted(ys)


def _in_rects(rects, x, y) -> bool:
    return any(r[0] <= x <= r[2] and r[1] <= y <= r[3] for r in rects)


class Lattice:
    """Grid of a plane, optionally restricted to a union of closed rectangles."""

    def __init__(self, plane: HoledPlane, rects=None, grid=None):
        self.plane = plane
        self.rects = None if rects is None else [tuple(_q(v) for v in r) for r in rects]
        if grid is None:
            ex, ey = [], []
            for r in self.rects or ():
                ex += [r[0], r[2]]
                ey += [r[1], r[3]]
            grid = refine_grid(plane, ex, ey)
        self.xs, self.ys = grid
        self.xi = {x: i for i, x in enumerate(self.xs)}
        self.yi = {y: j for j, y in enumerate(self.ys)}
        nx, ny = len(self.xs), len(self.ys)

        def inside(x, y):
            if plane.in_hole(x, y):
                return False
            return self.rects is None or _in_rects(self.rects, x, y)

        mx = [(self.xs[i] + self.xs[i + 1]) / 2 for i in range(nx - 1)]
        my = [(self.ys[j] + self.ys[j + 1]) / 2 for j in range(ny - 1)]
        self.node = [[inside(self.xs[i], self.ys[j]) for j in range(ny)] for i in range(nx)]
        self.right = [[inside(mx[i], self.ys[j]) for j in range(ny)] for i in range(nx - 1)]
        self.up = [[inside(self.xs[i], my[j]) for j in range(ny - 1)] for i in range(nx)]
        self.cell = [[inside(mx[i], my[j]) for j in range(ny - 1)] for i in range(nx - 1)]

    def index(self, p) -> tuple:
        x, y = (_q(c) for c in p)
        if x not in self.xi or y not in self.yi:
            raise ValidationError(f"point {p} is not a grid node")
        return self.xi[x], self.yi[y]

    def contains(self, p) -> bool:
        i, j = self.index(p)
        return self.node[i][j]

    def _column_count(self, i, j0, h):
        # forbidden cells of column i in rows j0 .. h-1
        col = self.cell[i]
        return sum(1 for j in range(j0, h) if not col[j])

    def signature(self, src, steps: str) -> tuple:
        i, j = self.index(src)
        j0 = j
        sig = []
        for s in steps:
            if s == "R":
                if not (self.node[i][j] and self.right[i][j]):
                    raise ValidationError("path leaves the space")
                sig.append(self._column_count(i, j0, j))
                i += 1
            elif s == "U":
                if not (self.node[i][j] and self.up[i][j]):
                    raise ValidationError("path leaves the space")
                j += 1
            else:
                raise ValueError(f"bad step {s!r}")
        return tuple(sig)

    def end(self, src, steps: str) -> tuple:
        i, j = self.index(src)
        i += steps.count("R")
        j += steps.count("U")
        return self.xs[i], self.ys[j]

    def classes(self, src, tgt, cap: int = DEFAULT_PATH_CAP) -> dict:
        """Signature -> lexicographically least staircase, for staircases
        from ``src`` to ``tgt``."""
        i0, j0 = self.index(src)
        i1, j1 = self.index(tgt)
        if i1 < i0 or j1 < j0 or not self.node[i0][j0] or not self.node[i1][j1]:
            return {}
        if (i0, j0) == (i1, j1):
            return {(): ""}
        states = {(i0, j0): {(): ""}}
        total = 0
        # nodes in order of i + j keep the DP topological
        for k in range(0, (i1 - i0) + (j1 - j0)):
            nxt = {}
            for di in range(max(0, k - (j1 - j0)), min(k, i1 - i0) + 1):
                i, j = i0 + di, j0 + (k - di)
                here = states.get((i, j))
                if not here:
                    continue
                for sig, rep in here.items():
                    if i < i1 and self.right[i][j] and self.node[i + 1][j]:
                        key = sig + (self._column_count(i, j0, j),)
                        bucket = nxt.setdefault((i + 1, j), {})
                        cand = rep + "R"
                        if key not in bucket or cand < bucket[key]:
                            bucket[key] = cand
                    if j < j1 and self.up[i][j] and self.node[i][j + 1]:
                        bucket = nxt.setdefault((i, j + 1), {})
                        cand = rep + "U"
                        if sig not in bucket or cand < bucket[sig]:
                            bucket[sig] = cand
            total += sum(len(b) for b in nxt.values())
            if total > cap:
                raise SizeLimitExceeded("lattice path classes", cap)
            states = nxt
        return dict(sorted(states.get((i1, j1), {}).items(), key=lambda kv: kv[1]))

    def vertices(self, src, steps: str) -> list:
        i, j = self.index(src)
        out = [(self.xs[i], self.ys[j])]
        for s in steps:
            if s == "R":
                i += 1
            else:
                j += 1
            out.append((self.xs[i], self.ys[j]))
        return out


@dataclass(frozen=True)
class LatticePathClass:
    source: str
    target: str
    index: int
    representative: str
    signature: tuple
    vertices: tuple

    @property
    def id(self) -> str:
        return f"{self.source}->{self.target}#{self.index}"


def _as_pl_path(vertices) -> PLPath:
    n = len(vertices) - 1
    if n == 0:
        return PLPath(AnalyticModel.line(2), (0, 1), (vertices[0], vertices[0]))
    return PLPath(AnalyticModel.line(2), tuple(Fraction(k, n) for k in range(n + 1)), tuple(vertices))


def class_weight(c: LatticePathClass) -> ExtWeight:
    """Least length over the class: the representative's, which is the L1
    displacement shared by every monotone path with these ends."""
    return path_length(_as_pl_path(c.vertices))


def enumerate_classes(plane: HoledPlane, x, y, cap: int = DEFAULT_PATH_CAP,
                      lattice: Lattice | None = None) -> list:
    """Homotopy classes of directed paths between two marked points (by name
    or coordinates)."""
    lat = lattice or Lattice(plane)
    sx, px = _resolve(plane, x)
    sy, py = _resolve(plane, y)
    out = []
    for k, (sig, rep) in enumerate(lat.classes(px, py, cap).items()):
        out.append(LatticePathClass(sx, sy, k, rep, sig, tuple(lat.vertices(px, rep))))
    return out


def _resolve(plane, x):
    if isinstance(x, str):
        return x, plane.point(x)
    p = tuple(_q(c) for c in x)
    if p in plane.marked:
        return plane.names[plane.marked.index(p)], p
    return _point_name(p), p


@dataclass
class FundamentalData:
    category: FiniteWeightedCategory
    classes: dict
    lattice: Lattice


def _fundamental(plane: HoledPlane, lattice: Lattice, names=None, cap=DEFAULT_PATH_CAP) -> FundamentalData:
    names = list(plane.names if names is None else names)
    for n in names:
        if not lattice.contains(plane.point(n)):
            raise ValidationError(f"marked point {n} is not in the space")
    classes, bysig = {}, {}
    mors, weight, ids = {}, {}, {}
    for a in names:
        for b in names:
            for c in enumerate_classes(plane, a, b, cap, lattice):
                classes[c.id] = c
                bysig[(a, b, c.signature)] = c.id
                mors[c.id] = (a, b)
                weight[c.id] = class_weight(c)
        ids[a] = f"{a}->{a}#0"
    comp = {}
    for ida, ca in classes.items():
        for idb, cb in classes.items():
            if ca.target != cb.source:
                continue
            steps = ca.representative + cb.representative
            sig = lattice.signature(plane.point(ca.source), steps)
            comp[(ida, idb)] = bysig[(ca.source, cb.target, sig)]
    C = FiniteWeightedCategory(tuple(names), mors, ids, comp, weight)
    return FundamentalData(C, classes, lattice)


def fundamental_category(plane: HoledPlane, cap: int = DEFAULT_PATH_CAP) -> FiniteWeightedCategory:
    """Category on the marked points: arrows are homotopy classes of directed
    paths, weighted by least length."""
    return _fundamental(plane, Lattice(plane), cap=cap).category


def generating_arrows(C: FiniteWeightedCategory) -> list:
    """Non-identity arrows that are not composites of two non-identity arrows."""
    composite = set()
    for a, b in C.composable_pairs():
        if not C.is_identity(a) and not C.is_identity(b):
            composite.add(C.compose(a, b))
    return [m for m in C.non_identities() if m not in composite]


def simplicity_report(plane: HoledPlane, cap: int = DEFAULT_PATH_CAP) -> dict:
    data = _fundamental(plane, Lattice(plane), cap=cap)
    C = data.category
    geodetic = True
    for cid, c in data.classes.items():
        p0, p1 = plane.point(c.source), plane.point(c.target)
        if class_weight(c) != (p1[0] - p0[0]) + (p1[1] - p0[1]):
            geodetic = False
    one = all(len(C.hom(x, y)) <= 1 for x in C.objects for y in C.objects)
    return {"geodetically_simple": geodetic, "one_simple": one}


# van Kampen ------------------------------------------------------------------

def vertical_cut(plane: HoledPlane, c1, c2) -> tuple:
    """Pieces ``[0, c2] x [0, B]`` and ``[c1, A] x [0, B]`` for ``c1 <= c2``."""
    A, B = plane.bounds
    c1, c2 = _q(c1), _q(c2)
    if not (0 <= c1 <= c2 <= A):
        raise ValidationError("cut needs 0 <= c1 <= c2 <= A")
    return [(0, 0, c2, B)], [(c1, 0, A, B)]


def random_plane(rng, n_holes: int = 1, den: int = 6, extra_marks: int = 1) -> tuple:
    """A random unit square with ``n_holes`` holes and a vertical cut.

    Returns ``(plane, (c1, c2))``.  Besides the two corners and a few random
    grid points, every grid node of the space on the line ``x = (c1 + c2) / 2``
    is marked, so each piece of the overlap carries a base point.
    """
    step = Fraction(1, den)
    for _ in range(1000):
        holes = []
        for _ in range(n_holes):
            x0, x1 = sorted(rng.sample(range(1, den), 2))
            y0, y1 = sorted(rng.sample(range(1, den), 2))
            holes.append((x0 * step, y0 * step, x1 * step, y1 * step))
        try:
            base = HoledPlane((1, 1), tuple(holes), ((0, 0), (1, 1)))
        except ValidationError:
            continue
        marks = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
        for _ in range(extra_marks):
            p = (rng.randrange(den + 1) * step, rng.randrange(den + 1) * step)
            if not base.in_hole(*p) and p not in marks:
                marks.append(p)
        c1, c2 = sorted(rng.sample(range(1, den), 2))
        c1, c2 = c1 * step, c2 * step
        c = (c1 + c2) / 2
        _, ys = refine_grid(base.with_marks(marks))
        for y in ys:
            if not base.in_hole(c, y) and (c, y) not in marks:
                marks.append((c, y))
        return base.with_marks(marks), (c1, c2)
    raise ValidationError("could not place non-touching holes")


def annulus_pieces() -> tuple:
    """The two overlapping L-shaped pieces covering the square annulus."""
    h = Fraction(1, 2)
    return [(0, 0, 1, h), (h, 0, 1, 1)], [(0, 0, h, 1), (0, h, 1, 1)]


def _intersect(r1, r2):
    out = []
    for a in r1:
        for b in r2:
            x0, y0 = max(a[0], b[0]), max(a[1], b[1])
            x1, y1 = min(a[2], b[2]), min(a[3], b[3])
            if x0 <= x1 and y0 <= y1:
                out.append((x0, y0, x1, y1))
    return out


def _check_cover(full: Lattice, L1: Lattice, L2: Lattice):
    """Every point of the space has a neighbourhood (in the space) inside one piece."""
    nx, ny = len(full.xs), len(full.ys)

    def open_parts(kind, i, j):
        # the pieces of the stratification meeting a small neighbourhood
        parts = [(kind, i, j)]
        if kind == "node":
            for di in (-1, 0):
                for dj in (-1, 0):
                    if 0 <= i + di < nx - 1 and 0 <= j + dj < ny - 1:
                        parts.append(("cell", i + di, j + dj))
            for di in (-1, 0):
                if 0 <= i + di < nx - 1:
                    parts.append(("right", i + di, j))
            for dj in (-1, 0):
                if 0 <= j + dj < ny - 1:
                    parts.append(("up", i, j + dj))
        elif kind == "right":
            for dj in (-1, 0):
                if 0 <= j + dj < ny - 1:
                    parts.append(("cell", i, j + dj))
        elif kind == "up":
            for di in (-1, 0):
                if 0 <= i + di < nx - 1:
                    parts.append(("cell", i + di, j))
        return parts

    def has(lat, part):
        kind, i, j = part
        return getattr(lat, kind)[i][j]

    strata = ([("node", i, j) for i in range(nx) for j in range(ny)]
              + [("right", i, j) for i in range(nx - 1) for j in range(ny)]
              + [("up", i, j) for i in range(nx) for j in range(ny - 1)]
              + [("cell", i, j) for i in range(nx - 1) for j in range(ny - 1)])
    for s in strata:
        if not has(full, s):
            continue
        near = [p for p in open_parts(*s) if has(full, p)]
        if not (all(has(L1, p) for p in near) or all(has(L2, p) for p in near)):
            raise CoverViolation(s)


def _inclusion(src: FundamentalData, tgt: FundamentalData, plane: HoledPlane) -> WFunctor:
    bysig = {}
    for cid, c in tgt.classes.items():
        bysig[(c.source, c.target, c.signature)] = cid
    mor = {}
    for cid, c in src.classes.items():
        sig = tgt.lattice.signature(plane.point(c.source), c.representative)
        mor[cid] = bysig[(c.source, c.target, sig)]
    return WFunctor(src.category, tgt.category, {x: x for x in src.category.objects}, mor)


@dataclass
class VanKampenReport:
    isomorphic: bool
    weights_equal: bool
    pushout: Pushout
    whole: FiniteWeightedCategory
    comparison: WFunctor
    mismatches: list

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.weights_equal


def van_kampen_check(plane: HoledPlane, pieces: tuple | None = None, cut: tuple | None = None,
                     cap: int = DEFAULT_PATH_CAP) -> VanKampenReport:
    """Glue the fundamental categories of two pieces along their overlap and
    compare with the fundamental category of the whole plane.

    ``pieces`` is a pair of rectangle lists; ``cut = (c1, c2)`` is shorthand
    for :func:`vertical_cut`; with neither, both pieces are the whole plane.
    """
    A, B = plane.bounds
    if pieces is None:
        pieces = vertical_cut(plane, *cut) if cut is not None else ([(0, 0, A, B)], [(0, 0, A, B)])
    r1 = [tuple(_q(v) for v in r) for r in pieces[0]]
    r2 = [tuple(_q(v) for v in r) for r in pieces[1]]
    r0 = _intersect(r1, r2)
    ex = [v for r in r1 + r2 for v in (r[0], r[2])]
    ey = [v for r in r1 + r2 for v in (r[1], r[3])]
    grid = refine_grid(plane, ex, ey)
    full = Lattice(plane, None, grid)
    L1, L2, L0 = (Lattice(plane, r, grid) for r in (r1, r2, r0))
    _check_cover(full, L1, L2)

    def marks_in(lat):
        return [n for n, m in zip(plane.names, plane.marked) if lat.contains(m)]

    X = _fundamental(plane, full, cap=cap)
    D1 = _fundamental(plane, L1, marks_in(L1), cap)
    D2 = _fundamental(plane, L2, marks_in(L2), cap)
    D0 = _fundamental(plane, L0, marks_in(L0), cap)
    u1, u2 = _inclusion(D0, D1, plane), _inclusion(D0, D2, plane)
    po = pushout_wcat(u1, u2)
    v1, v2 = _inclusion(D1, X, plane), _inclusion(D2, X, plane)
    comp = mediating_functor(po, v1, v2)
    P, C = po.category, X.category
    mism = []
    iso = (sorted(map(str, P.objects)) == sorted(map(str, C.objects))
           and len(set(comp.mor.values())) == len(P.morphisms) == len(C.morphisms))
    if not iso:
        mism.append(("sizes", len(P.morphisms), len(C.morphisms)))
    weq = True
    for m in P.morphisms:
        if P.w(m) != C.w(comp.mor[m]):
            weq = False
            mism.append(("weight", m, P.w(m), C.w(comp.mor[m])))
    return VanKampenReport(iso, weq, po, C, comp, mism)


def hom_sizes(C: FiniteWeightedCategory) -> dict:
    return {(x, y): len(C.hom(x, y)) for x in C.objects for y in C.objects}


def same_up_to_iso(A: FiniteWeightedCategory, B: FiniteWeightedCategory, obj_map=None) -> bool:
    return find_isomorphism(A, B, obj_map=obj_map) is not None
