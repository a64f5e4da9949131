"""Finite generalized (Lawvere) metric spaces.

A :class:`FiniteDeltaSpace` is a finite set of labelled points with a
distance matrix valued in ``[0, inf]``.  Distances need not be symmetric and
may be infinite; the only axioms are ``d(x, x) = 0`` and the triangle
inequality.  Everything here is exact: finite entries are ``Fraction`` and the
top element is :data:`wtopo.weights.INF`.

Constructors do not validate their input; call :func:`validate` when the
matrix comes from outside.  All operations below return valid spaces when
given valid spaces.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Sequence

from .errors import ReflexivityViolation, SizeLimitExceeded, TriangleViolation, UnknownLabel
from .weights import INF, ExtWeight, ext, ratio, scale as _scale_weight

DEFAULT_HOM_CAP = 10**6

Label = Hashable


@dataclass(frozen=True)
class FiniteDeltaSpace:
    points: tuple
    d: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(self.points)
        rows = tuple(tuple(ext(v) for v in row) for row in self.d)
        n = len(pts)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"distance matrix must be {n}x{n}")
        index = {p: i for i, p in enumerate(pts)}
        if len(index) != n:
            raise ValueError("point labels must be distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "d", rows)
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.points)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownLabel(label) from None

    def __contains__(self, label):
        try:
            return label in self._index
        except TypeError:
            return False

    def dist(self, x, y) -> ExtWeight:
        return self.d[self.index(x)][self.index(y)]

    def relabel(self, labels: Sequence) -> "FiniteDeltaSpace":
        return FiniteDeltaSpace(tuple(labels), self.d)


@dataclass(frozen=True)
class PointMap:
    source: FiniteDeltaSpace
    target: FiniteDeltaSpace
    assignment: dict

    def __post_init__(self):
        assignment = dict(self.assignment)
        for p in self.source.points:
            if p not in assignment:
                raise UnknownLabel(p)
            if assignment[p] not in self.target:
                raise UnknownLabel(assignment[p])
        object.__setattr__(self, "assignment", assignment)

    def __call__(self, x):
        return self.assignment[x]

    def then(self, other: "PointMap") -> "PointMap":
        """Diagrammatic composite: first ``self``, then ``other``."""
        return PointMap(self.source, other.target,
                        {x: other(self(x)) for x in self.source.points})


@dataclass(frozen=True)
class PointRelation:
    pairs: frozenset

    def __init__(self, pairs: Iterable = ()):
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in pairs))


# integer kernels -------------------------------------------------------------

def _to_ints(rows):
    """Scale a matrix of ExtWeights to integers; INF becomes None."""
    den = 1
    for row in rows:
        for v in row:
            if v is not INF:
                den = lcm(den, v.denominator)
    out = [[None if v is INF else v.numerator * (den // v.denominator) for v in row]
           for row in rows]
    return out, den


def _from_ints(rows, den):
    return tuple(tuple(INF if v is None else Fraction(v, den) for v in row) for row in rows)


def _closure_ints(D):
    """All-pairs shortest paths (Floyd-Warshall) in place on an int/None matrix."""
    n = len(D)
    for k in range(n):
        dk = D[k]
        for i in range(n):
            Di = D[i]
            dik = Di[k]
            if dik is None:
                continue
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                s = dik + dkj
                cur = Di[j]
                if cur is None or s < cur:
                    Di[j] = s
    return D


def shortest_paths(rows) -> tuple:
    """Shortest-path closure of a nonnegative ExtWeight arc matrix."""
    D, den = _to_ints(rows)
    for i in range(len(D)):
        D[i][i] = 0
    return _from_ints(_closure_ints(D), den)


# validation ------------------------------------------------------------------

def validate(matrix, points: Sequence | None = None) -> FiniteDeltaSpace:
    """Build a space and check both axioms, naming the first witness found."""
    if isinstance(matrix, FiniteDeltaSpace):
        space = matrix
    else:
        rows = [list(r) for r in matrix]
        if points is None:
            points = [str(i) for i in range(len(rows))]
        space = FiniteDeltaSpace(tuple(points), rows)
    n = len(space)
    for i in range(n):
        if space.d[i][i] != 0:
            raise ReflexivityViolation(i)
    D, _ = _to_ints(space.d)
    for i in range(n):
        Di = D[i]
        for j in range(n):
            dij = Di[j]
            if dij is None:
                continue
            Dj = D[j]
            for k in range(n):
                djk = Dj[k]
                if djk is None:
                    continue
                dik = Di[k]
                if dik is None or dij + djk < dik:
                    raise TriangleViolation(i, j, k)
    return space


def is_valid(space: FiniteDeltaSpace) -> bool:
    try:
        validate(space)
    except (ReflexivityViolation, TriangleViolation):
        return False
    return True


# limits and colimits -----------------------------------------------------------

def _nonempty(spaces):
    spaces = list(spaces)
    if not spaces:
        raise ValueError("need at least one space")
    return spaces


def _combine(spaces, op):
    spaces = _nonempty(spaces)
    idx = list(itertools.product(*(range(len(s)) for s in spaces)))
    points = tuple(tuple(s.points[i] for s, i in zip(spaces, t)) for t in idx)
    rows = []
    for a in idx:
        row = []
        for b in idx:
            row.append(op(s.d[i][j] for s, i, j in zip(spaces, a, b)))
        rows.append(row)
    return FiniteDeltaSpace(points, rows)


def _ext_sum(values):
    total = Fraction(0)
    for v in values:
        if v is INF:
            return INF
        total += v
    return total


def product(spaces: Sequence[FiniteDeltaSpace]) -> FiniteDeltaSpace:
    """Cartesian product with the sup (l-infinity) distance."""
    return _combine(spaces, max)


def tensor(spaces: Sequence[FiniteDeltaSpace]) -> FiniteDeltaSpace:
    """Product set with the additive (l1) distance."""
    return _combine(spaces, _ext_sum)


def sum(spaces: Sequence[FiniteDeltaSpace]) -> FiniteDeltaSpace:  # noqa: A001
    """Disjoint union; points are ``(summand_index, label)``."""
    spaces = _nonempty(spaces)
    points = tuple((k, p) for k, s in enumerate(spaces) for p in s.points)
    owner = [k for k, s in enumerate(spaces) for _ in s.points]
    local = [i for s in spaces for i in range(len(s))]
    rows = []
    for a in range(len(points)):
        row = []
        for b in range(len(points)):
            if owner[a] == owner[b]:
                row.append(spaces[owner[a]].d[local[a]][local[b]])
            else:
                row.append(INF)
        rows.append(row)
    return FiniteDeltaSpace(points, rows)


def subspace(space: FiniteDeltaSpace, subset: Iterable) -> FiniteDeltaSpace:
    wanted = list(subset)
    if not wanted:
        raise ValueError("subset must be nonempty")
    keep = set()
    for p in wanted:
        keep.add(space.index(p))
    idx = sorted(keep)
    return FiniteDeltaSpace(tuple(space.points[i] for i in idx),
                            [[space.d[i][j] for j in idx] for i in idx])


def _classes(space, pairs):
    parent = list(range(len(space)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x, y in pairs:
        a, b = find(space.index(x)), find(space.index(y))
        if a != b:
            parent[max(a, b)] = min(a, b)
    return [find(i) for i in range(len(space))]


def quotient(space: FiniteDeltaSpace, relation) -> tuple[FiniteDeltaSpace, PointMap]:
    """Identify related points; distances become shortest chains.

    Each class is labelled by its first member.  Returns the quotient and the
    projection, which is 1-Lipschitz.
    """
    pairs = relation.pairs if isinstance(relation, PointRelation) else relation
    root = _classes(space, pairs)
    arcs = [list(r) for r in space.d]
    n = len(space)
    for i in range(n):
        for j in range(n):
            if root[i] == root[j]:
                arcs[i][j] = Fraction(0)
    closed = shortest_paths(arcs)
    reps = sorted(set(root))
    q = FiniteDeltaSpace(tuple(space.points[r] for r in reps),
                         [[closed[a][b] for b in reps] for a in reps])
    proj = PointMap(space, q, {space.points[i]: space.points[root[i]] for i in range(n)})
    return q, proj


def symmetrize(space: FiniteDeltaSpace) -> FiniteDeltaSpace:
    """Greatest symmetric distance below ``d``: shortest zig-zag chains."""
    n = len(space)
    arcs = [[min(space.d[i][j], space.d[j][i]) for j in range(n)] for i in range(n)]
    return FiniteDeltaSpace(space.points, shortest_paths(arcs))


def opposite(space: FiniteDeltaSpace) -> FiniteDeltaSpace:
    n = len(space)
    return FiniteDeltaSpace(space.points, [[space.d[j][i] for j in range(n)] for i in range(n)])


def scale(space: FiniteDeltaSpace, lam) -> FiniteDeltaSpace:
    """``lam * d`` entrywise, with ``lam * inf = inf`` even for ``lam = 0``."""
    lam = ext(lam)
    if lam is INF:
        raise ValueError("scale factor must be finite")
    return FiniteDeltaSpace(space.points,
                            [[_scale_weight(lam, v) for v in row] for row in space.d])


def preorder(space: FiniteDeltaSpace) -> frozenset:
    """Pairs ``(x, y)`` with ``d(x, y) < inf``."""
    n = len(space)
    return frozenset((space.points[i], space.points[j])
                     for i in range(n) for j in range(n) if space.d[i][j] is not INF)


# maps ------------------------------------------------------------------------

def _pair_ratio(ds, dt) -> ExtWeight:
    # least lam with dt <= lam * ds
    if dt == 0 or ds is INF:
        return Fraction(0)
    return ratio(dt, ds)


def lipschitz_weight(f: PointMap) -> ExtWeight:
    """Least ``lam`` with ``d(fx, fy) <= lam * d(x, y)``; INF if none exists."""
    src, tgt = f.source, f.target
    img = [tgt.index(f(p)) for p in src.points]
    best = Fraction(0)
    for i, ri in enumerate(src.d):
        ti = tgt.d[img[i]]
        for j, ds in enumerate(ri):
            r = _pair_ratio(ds, ti[img[j]])
            if r is INF:
                return INF
            if r > best:
                best = r
    return best


def identity_map(space: FiniteDeltaSpace) -> PointMap:
    return PointMap(space, space, {p: p for p in space.points})


def _is_short(dy_int, dz_int, h) -> bool:
    for i, row in enumerate(dy_int):
        zi = dz_int[h[i]]
        for j, dij in enumerate(row):
            dz = zi[h[j]]
            if dz is None:
                if dij is not None:
                    return False
            elif dij is not None and dz > dij:
                return False
    return True


def short_maps(Y: FiniteDeltaSpace, Z: FiniteDeltaSpace, cap: int = DEFAULT_HOM_CAP) -> list:
    """All 1-Lipschitz maps ``Y -> Z`` as tuples of target indices."""
    total = len(Z) ** len(Y)
    if total > cap:
        raise SizeLimitExceeded(f"|Z|^|Y| = {total}", cap)
    # common denominator so both matrices compare as integers
    D, _ = _to_ints(list(Y.d) + list(Z.d))
    dy, dz = D[:len(Y)], D[len(Y):]
    return [h for h in itertools.product(range(len(Z)), repeat=len(Y)) if _is_short(dy, dz, h)]


def internal_hom(Y: FiniteDeltaSpace, Z: FiniteDeltaSpace, cap: int = DEFAULT_HOM_CAP) -> FiniteDeltaSpace:
    """Space of 1-Lipschitz maps with the uniform-convergence distance.

    A point is the tuple of images of ``Y.points`` in order.
    """
    maps = short_maps(Y, Z, cap)
    points = tuple(tuple(Z.points[k] for k in h) for h in maps)
    rows = []
    for h in maps:
        row = []
        for k in maps:
            row.append(max((Z.d[a][b] for a, b in zip(h, k)), default=Fraction(0)))
        rows.append(row)
    return FiniteDeltaSpace(points, rows)


def evaluation(Y: FiniteDeltaSpace, Z: FiniteDeltaSpace, cap: int = DEFAULT_HOM_CAP) -> PointMap:
    """The counit ``Z^Y (x) Y -> Z``."""
    H = internal_hom(Y, Z, cap)
    T = tensor([H, Y])
    return PointMap(T, Z, {(h, y): h[Y.index(y)] for h, y in T.points})


# comparison helpers ------------------------------------------------------------

def entrywise_leq(a: FiniteDeltaSpace, b: FiniteDeltaSpace) -> bool:
    """``a.d <= b.d`` position by position (labels are ignored)."""
    if len(a) != len(b):
        raise ValueError("spaces differ in size")
    return all(x <= y for ra, rb in zip(a.d, b.d) for x, y in zip(ra, rb))


def find_isometry(a: FiniteDeltaSpace, b: FiniteDeltaSpace):
    """A distance-preserving bijection ``a -> b`` as a dict, or None.

    Backtracking search; intended for small spaces.
    """
    n = len(a)
    if n != len(b):
        return None
    perm = [None] * n
    used = [False] * n

    def ok(i, j):
        for k in range(i):
            if a.d[i][k] != b.d[j][perm[k]] or a.d[k][i] != b.d[perm[k]][j]:
                return False
        return True

    def go(i):
        if i == n:
            return True
        for j in range(n):
            if not used[j] and ok(i, j):
                used[j] = True
                perm[i] = j
                if go(i + 1):
                    return True
                used[j] = False
        return False

    if not go(0):
        return None
    return {a.points[i]: b.points[perm[i]] for i in range(n)}


def terminal() -> FiniteDeltaSpace:
    return FiniteDeltaSpace(("*",), [[0]])


def from_rows(rows, points: Sequence | None = None) -> FiniteDeltaSpace:
    """Convenience constructor; ``points`` default to ``"0", "1", ...``."""
    rows = [list(r) for r in rows]
    if points is None:
        points = [str(i) for i in range(len(rows))]
    return FiniteDeltaSpace(tuple(points), rows)
