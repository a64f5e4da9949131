"""Chain models of spaces with weighted paths.

A :class:`ChainWSpace` is a finite directed multigraph whose walks play the
role of paths.  A walk is a tuple of edge indices; the empty walk is the
constant path and always weighs 0.  Reparametrisation has no meaning for
walks, so the only axioms are

* ``w(u + v) <= w(u) + w(v)``
* ``max(w(u), w(v)) <= w(u + v)``

Weights come in a few representations (``mode``):

``linear``
    one weight per edge, summed along the walk.
``tabled``
    explicit weights for walks up to ``bound`` edges; any walk weighs the
    least total over decompositions into tabled pieces.
``span``
    built by :func:`sp_of`: the largest distance from an earlier to a later
    vertex of the walk.

Products, sums, quotients and a few other constructions keep a reference to
their inputs and evaluate weights on demand; their mode names say which.

The metric side uses :class:`wtopo.dmetric.FiniteDeltaSpace`; :func:`delta_of`
is the geodesic distance and :func:`sp_of` / :func:`L_of` go back.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import dmetric
from .dmetric import FiniteDeltaSpace
from .errors import EdgeOffSpace, SizeLimitExceeded, UnknownLabel, ValidationError, WeightAxiomViolation
from .weights import INF, ExtWeight, ext, ratio, scale as _scale_weight, wsum

LINEAR = "linear"
TABLED = "tabled"
SPAN = "span"

DEFAULT_WALK_CAP = 200_000

Walk = tuple


@dataclass(frozen=True, eq=False)
class ChainWSpace:
    vertices: tuple
    edges: tuple
    mode: str
    edge_weights: tuple = ()
    table: dict | None = None
    bound: int = 0
    rule: object = field(default=None, repr=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        index = {v: i for i, v in enumerate(verts)}
        if len(index) != len(verts):
            raise ValidationError("vertex labels must be distinct")
        edges = tuple(tuple(e) for e in self.edges)
        src, tgt = [], []
        for e in edges:
            if len(e) != 2 or e[0] not in index or e[1] not in index:
                raise EdgeOffSpace(e)
            src.append(index[e[0]])
            tgt.append(index[e[1]])
        out = [[] for _ in verts]
        for k, s in enumerate(src):
            out[s].append(k)
        set_ = object.__setattr__
        set_(self, "vertices", verts)
        set_(self, "edges", edges)
        set_(self, "_index", index)
        set_(self, "_src", tuple(src))
        set_(self, "_tgt", tuple(tgt))
        set_(self, "_out", tuple(tuple(o) for o in out))
        if self.mode == LINEAR:
            ws = tuple(ext(w) for w in self.edge_weights)
            if len(ws) != len(edges):
                raise ValidationError(f"expected {len(edges)} edge weights, got {len(ws)}")
            set_(self, "edge_weights", ws)
        elif self.mode == TABLED:
            bound = self.bound or 2 * len(verts)
            table = {}
            for key, w in (self.table or {}).items():
                key = tuple(int(k) for k in key)
                if not key:
                    raise ValidationError("the empty walk is not tabled; it weighs 0")
                if len(key) > bound:
                    raise ValidationError(f"tabled walk {key} is longer than the bound {bound}")
                self.check_walk(key)
                table[key] = ext(w)
            set_(self, "table", table)
            set_(self, "bound", bound)
        elif self.rule is None:
            raise ValidationError(f"unknown weight mode {self.mode!r}")

    # structure ---------------------------------------------------------------

    def index(self, label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownLabel(label) from None

    def src(self, e: int) -> int:
        return self._src[e]

    def tgt(self, e: int) -> int:
        return self._tgt[e]

    def out_edges(self, v: int) -> tuple:
        return self._out[v]

    def check_walk(self, walk: Sequence[int]) -> None:
        n = len(self.edges)
        for k, e in enumerate(walk):
            if not 0 <= e < n:
                raise ValidationError(f"edge index {e} out of range")
            if k and self._tgt[walk[k - 1]] != self._src[e]:
                raise ValidationError(f"walk {tuple(walk)} breaks at position {k}")

    def vertex_sequence(self, walk: Sequence[int]) -> list:
        return [self._src[walk[0]]] + [self._tgt[e] for e in walk]

    @property
    def check_len(self) -> int:
        """Default walk length for checks: the table bound, else twice |V|."""
        return self.bound if self.mode == TABLED else 2 * len(self.vertices)

    # weights -------------------------------------------------------------------

    def weight(self, walk: Iterable[int]) -> ExtWeight:
        walk = tuple(walk)
        if not walk:
            return Fraction(0)
        self.check_walk(walk)
        if self.mode == LINEAR:
            return wsum(self.edge_weights[e] for e in walk)
        if self.mode == TABLED:
            return self._tabled_weight(walk)
        return self.rule.weight(self, walk)

    def _tabled_weight(self, walk):
        # stored entries are taken as given so the validator can see bad ones
        if walk in self.table:
            return self.table[walk]
        n = len(walk)
        best = [Fraction(0)] + [INF] * n
        for i in range(1, n + 1):
            for j in range(max(0, i - self.bound), i):
                if best[j] is INF:
                    continue
                piece = self.table.get(walk[j:i])
                if piece is None or piece is INF:
                    continue
                cand = best[j] + piece
                if cand < best[i]:
                    best[i] = cand
        return best[n]


def linear(vertices, edges, weights) -> ChainWSpace:
    return ChainWSpace(tuple(vertices), tuple(edges), LINEAR, edge_weights=tuple(weights))


def tabled(vertices, edges, table, bound: int | None = None) -> ChainWSpace:
    return ChainWSpace(tuple(vertices), tuple(edges), TABLED, table=dict(table), bound=bound or 0)


def discrete(vertices, edges) -> ChainWSpace:
    """Every non-constant walk is unfeasible."""
    return linear(vertices, edges, [INF] * len(edges))


def codiscrete(vertices, edges) -> ChainWSpace:
    """Every walk is free."""
    return linear(vertices, edges, [0] * len(edges))


def path_graph(n: int, weight=1) -> ChainWSpace:
    """Chain model of the line: ``0 -> 1 -> ... -> n-1`` with equal steps."""
    verts = tuple(str(i) for i in range(n))
    return linear(verts, [(verts[i], verts[i + 1]) for i in range(n - 1)], [weight] * (n - 1))


# walks ---------------------------------------------------------------------------

def walks(X: ChainWSpace, max_len: int | None = None, cap: int = DEFAULT_WALK_CAP) -> Iterator[Walk]:
    """All nonempty walks with at most ``max_len`` edges, depth first."""
    if max_len is None:
        max_len = X.check_len
    count = 0

    def extend(prefix, v):
        nonlocal count
        for e in X.out_edges(v):
            w = prefix + (e,)
            count += 1
            if count > cap:
                raise SizeLimitExceeded(f"walk enumeration (length <= {max_len})", cap)
            yield w
            if len(w) < max_len:
                yield from extend(w, X.tgt(e))

    if max_len < 1:
        return
    for v in range(len(X.vertices)):
        yield from extend((), v)


def axiom_violation(X: ChainWSpace, max_len: int | None = None):
    """First pair ``(u, v)`` breaking subadditivity or monotonicity, else None."""
    cache = {}

    def w(walk):
        if walk not in cache:
            cache[walk] = X.weight(walk)
        return cache[walk]

    for walk in walks(X, max_len):
        total = w(walk)
        for k in range(1, len(walk)):
            u, v = walk[:k], walk[k:]
            wu, wv = w(u), w(v)
            if total > wu + wv or max(wu, wv) > total:
                return u, v
    return None


def validate_wspace(X: ChainWSpace, max_len: int | None = None) -> ChainWSpace:
    bad = axiom_violation(X, max_len)
    if bad is not None:
        raise WeightAxiomViolation(*bad)
    return X


def walkwise_leq(A: ChainWSpace, B: ChainWSpace, max_len: int | None = None):
    """First walk with ``A.w > B.w`` (same graph assumed), else None."""
    if A.edges != B.edges:
        raise ValidationError("spaces have different edge sets")
    for walk in walks(A, max_len if max_len is not None else max(A.check_len, B.check_len)):
        if A.weight(walk) > B.weight(walk):
            return walk
    return None


def walkwise_equal(A: ChainWSpace, B: ChainWSpace, max_len: int | None = None) -> bool:
    if A.edges != B.edges:
        return False
    n = max_len if max_len is not None else max(A.check_len, B.check_len)
    return all(A.weight(w) == B.weight(w) for w in walks(A, n))


# derived weight rules --------------------------------------------------------------

@dataclass(frozen=True)
class _SpanRule:
    metric: FiniteDeltaSpace

    def weight(self, X, walk):
        seq = X.vertex_sequence(walk)
        d = self.metric.d
        best = Fraction(0)
        for j in range(1, len(seq)):
            dj = seq[j]
            for i in range(j):
                v = d[seq[i]][dj]
                if v is INF:
                    return INF
                if v > best:
                    best = v
        return best

    def delta(self, X):
        # cycles never help: dropping one only removes pairs from the max
        n = len(X.vertices)
        d = self.metric.d
        best = [[INF] * n for _ in range(n)]
        visits = 0

        def dfs(seq, on_path, cur):
            nonlocal visits
            v = seq[-1]
            if cur < best[seq[0]][v]:
                best[seq[0]][v] = cur
            for e in X.out_edges(v):
                u = X.tgt(e)
                if u in on_path:
                    continue
                visits += 1
                if visits > DEFAULT_WALK_CAP:
                    raise SizeLimitExceeded("simple path search", DEFAULT_WALK_CAP)
                nxt = max([cur] + [d[s][u] for s in seq])
                on_path.add(u)
                seq.append(u)
                dfs(seq, on_path, nxt)
                seq.pop()
                on_path.discard(u)

        for s in range(n):
            dfs([s], {s}, Fraction(0))
        return best


@dataclass(frozen=True)
class _CombineRule:
    factors: tuple
    steps: tuple  # per edge: one entry per factor, an edge index or None
    additive: bool

    def weight(self, X, walk):
        parts = []
        for k, f in enumerate(self.factors):
            parts.append(f.weight(s[k] for s in (self.steps[e] for e in walk) if s[k] is not None))
        return wsum(parts) if self.additive else max(parts)

    def delta(self, X):
        ds = [delta_of(f) for f in self.factors]
        return (dmetric.tensor(ds) if self.additive else dmetric.product(ds)).d


@dataclass(frozen=True)
class _SumRule:
    factors: tuple
    owner: tuple  # per edge: (summand, local edge index)

    def weight(self, X, walk):
        k = self.owner[walk[0]][0]
        return self.factors[k].weight(self.owner[e][1] for e in walk)

    def delta(self, X):
        return dmetric.sum([delta_of(f) for f in self.factors]).d


@dataclass(frozen=True)
class _QuotientRule:
    source: ChainWSpace
    pairs: tuple

    def weight(self, X, walk):
        # cut only where the walk is glued, i.e. where source edges do not chain
        S = self.source
        n = len(walk)
        best = [Fraction(0)] + [INF] * n
        for j in range(n):
            if best[j] is INF:
                continue
            for i in range(j + 1, n + 1):
                if i - 1 > j and S.tgt(walk[i - 2]) != S.src(walk[i - 1]):
                    break
                piece = S.weight(walk[j:i])
                cand = best[j] + piece
                if cand < best[i]:
                    best[i] = cand
        return best[n]

    def delta(self, X):
        q, _ = dmetric.quotient(delta_of(self.source), self.pairs)
        return q.d


@dataclass(frozen=True)
class _OppositeRule:
    base: ChainWSpace

    def weight(self, X, walk):
        return self.base.weight(reversed(walk))

    def delta(self, X):
        return dmetric.opposite(delta_of(self.base)).d


@dataclass(frozen=True)
class _ScaleRule:
    base: ChainWSpace
    lam: Fraction

    def weight(self, X, walk):
        return _scale_weight(self.lam, self.base.weight(walk))

    def delta(self, X):
        return dmetric.scale(delta_of(self.base), self.lam).d


# constructions ---------------------------------------------------------------------

def _combine(spaces, additive):
    spaces = list(spaces)
    if not spaces:
        raise ValueError("need at least one space")
    verts = tuple(itertools.product(*(s.vertices for s in spaces)))
    options = [[("e", e) for e in range(len(s.edges))] + [("v", v) for v in range(len(s.vertices))]
               for s in spaces]
    edges, steps = [], []
    for combo in itertools.product(*options):
        if all(kind == "v" for kind, _ in combo):
            continue
        a, b, step = [], [], []
        for s, (kind, i) in zip(spaces, combo):
            if kind == "e":
                a.append(s.vertices[s.src(i)])
                b.append(s.vertices[s.tgt(i)])
                step.append(i)
            else:
                a.append(s.vertices[i])
                b.append(s.vertices[i])
                step.append(None)
        edges.append((tuple(a), tuple(b)))
        steps.append(tuple(step))
    if additive and all(s.mode == LINEAR for s in spaces):
        weights = [wsum(s.edge_weights[i] for s, i in zip(spaces, st) if i is not None)
                   for st in steps]
        return linear(verts, edges, weights)
    mode = "tensor" if additive else "product"
    return ChainWSpace(verts, tuple(edges), mode,
                       rule=_CombineRule(tuple(spaces), tuple(steps), additive))


def product(spaces: Sequence[ChainWSpace]) -> ChainWSpace:
    """Cartesian product: a walk moves any nonempty set of coordinates per step
    and weighs the sup of its component weights."""
    return _combine(spaces, additive=False)


def tensor(spaces: Sequence[ChainWSpace]) -> ChainWSpace:
    """Same graph as :func:`product`, weighted by the sum of component weights."""
    return _combine(spaces, additive=True)


def sum(spaces: Sequence[ChainWSpace]) -> ChainWSpace:  # noqa: A001
    """Disjoint union; vertices are ``(summand_index, label)``."""
    spaces = list(spaces)
    if not spaces:
        raise ValueError("need at least one space")
    verts = tuple((k, v) for k, s in enumerate(spaces) for v in s.vertices)
    edges, owner = [], []
    for k, s in enumerate(spaces):
        for i, (a, b) in enumerate(s.edges):
            edges.append(((k, a), (k, b)))
            owner.append((k, i))
    if all(s.mode == LINEAR for s in spaces):
        return linear(verts, edges, [spaces[k].edge_weights[i] for k, i in owner])
    return ChainWSpace(verts, tuple(edges), "sum", rule=_SumRule(tuple(spaces), tuple(owner)))


def quotient(X: ChainWSpace, relation) -> ChainWSpace:
    """Glue related vertices.  Edges keep their indices; a glued walk weighs
    the least total over the source walks it splits into."""
    pairs = tuple(tuple(p) for p in getattr(relation, "pairs", relation))
    for a, b in pairs:
        X.index(a), X.index(b)
    space = FiniteDeltaSpace(X.vertices, [[0] * len(X.vertices)] * len(X.vertices))
    root = dmetric._classes(space, pairs)
    reps = sorted(set(root))
    label = {i: X.vertices[root[i]] for i in range(len(X.vertices))}
    edges = tuple((label[X.src(e)], label[X.tgt(e)]) for e in range(len(X.edges)))
    return ChainWSpace(tuple(X.vertices[r] for r in reps), edges, "quotient",
                       rule=_QuotientRule(X, pairs))


def opposite(X: ChainWSpace) -> ChainWSpace:
    """Reversed edges; a walk weighs what its reverse weighed.  Walks are
    read in reverse edge order."""
    edges = tuple((b, a) for a, b in X.edges)
    if X.mode == LINEAR:
        return linear(X.vertices, edges, X.edge_weights)
    return ChainWSpace(X.vertices, edges, "opposite", rule=_OppositeRule(X))


def scale(X: ChainWSpace, lam) -> ChainWSpace:
    lam = ext(lam)
    if lam is INF:
        raise ValueError("scale factor must be finite")
    if X.mode == LINEAR:
        return linear(X.vertices, X.edges, [_scale_weight(lam, w) for w in X.edge_weights])
    return ChainWSpace(X.vertices, X.edges, "scaled", rule=_ScaleRule(X, lam))


def linearize(X: ChainWSpace) -> ChainWSpace:
    """Least linear weight above ``w``; on a chain it is fixed by single edges."""
    if X.mode == LINEAR:
        return X
    return linear(X.vertices, X.edges, [X.weight((e,)) for e in range(len(X.edges))])


def linear_weight(X: ChainWSpace, walk: Sequence[int]) -> ExtWeight:
    """Max over decompositions into consecutive subwalks of the summed weights."""
    walk = tuple(walk)
    n = len(walk)
    best = [Fraction(0)] + [None] * n
    for i in range(1, n + 1):
        best[i] = max(best[j] + X.weight(walk[j:i]) for j in range(i))
    return best[n]


def is_linear(X: ChainWSpace, max_len: int | None = None) -> bool:
    return X.mode == LINEAR or walkwise_equal(linearize(X), X, max_len)


# the metric side -------------------------------------------------------------------

def delta_of(X: ChainWSpace) -> FiniteDeltaSpace:
    """Geodesic distance: least weight of a walk from ``x`` to ``x'``."""
    n = len(X.vertices)
    if X.mode in (LINEAR, TABLED):
        arcs = [[INF] * n for _ in range(n)]
        if X.mode == LINEAR:
            items = (((e,), w) for e, w in enumerate(X.edge_weights))
        else:
            items = X.table.items()
        for walk, w in items:
            a, b = X.src(walk[0]), X.tgt(walk[-1])
            if w < arcs[a][b]:
                arcs[a][b] = w
        rows = dmetric.shortest_paths(arcs)
    else:
        rows = X.rule.delta(X)
        rows = [list(r) for r in rows]
        for i in range(n):
            rows[i][i] = Fraction(0)
    return FiniteDeltaSpace(X.vertices, rows)


def _admissible(Y: FiniteDeltaSpace, admissible) -> tuple:
    edges = tuple(tuple(e) for e in admissible)
    for e in edges:
        if len(e) != 2 or e[0] not in Y or e[1] not in Y:
            raise EdgeOffSpace(e)
    return edges


def sp_of(Y: FiniteDeltaSpace, admissible) -> ChainWSpace:
    """Span weight on the admissible walks of ``Y``."""
    return ChainWSpace(Y.points, _admissible(Y, admissible), SPAN, rule=_SpanRule(Y))


def L_of(Y: FiniteDeltaSpace, admissible) -> ChainWSpace:
    """Length weight: sum of consecutive distances.  Always linear."""
    edges = _admissible(Y, admissible)
    return linear(Y.points, edges, [Y.dist(a, b) for a, b in edges])


@dataclass
class GaloisReport:
    checks: dict
    witnesses: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _same_metric(A: FiniteDeltaSpace, B: FiniteDeltaSpace) -> bool:
    return A.points == B.points and A.d == B.d


def _first_gap(A: FiniteDeltaSpace, B: FiniteDeltaSpace):
    """First pair where ``A`` exceeds ``B``, as labels."""
    for i, p in enumerate(A.points):
        for j, q in enumerate(A.points):
            if A.d[i][j] > B.d[i][j]:
                return p, q
    return None


def _walk_round_trip(report, name, lower, upper, max_len, equal=False):
    if equal:
        witness = walkwise_leq(lower, upper, max_len) or walkwise_leq(upper, lower, max_len)
    else:
        witness = walkwise_leq(lower, upper, max_len)
    report.checks[name] = witness is None
    if witness is not None:
        report.witnesses[name] = witness


def galois_check(X: ChainWSpace, max_len: int | None = None) -> GaloisReport:
    """Unit side of both adjunctions on a chain w-space.

    The length adjunction is defined on linear spaces, so its checks run on
    ``linearize(X)`` (which is ``X`` itself when ``X`` is linear).
    """
    rep = GaloisReport({}, {})
    n = max_len if max_len is not None else X.check_len
    Y = delta_of(X)
    S = sp_of(Y, X.edges)
    _walk_round_trip(rep, "X >= sp(dX)", S, X, n)
    dS = delta_of(S)
    rep.checks["d(sp(dX)) = dX"] = _same_metric(dS, Y)
    _walk_round_trip(rep, "sp(d(sp(dX))) = sp(dX)", sp_of(dS, X.edges), S, n, equal=True)
    LX = linearize(X)
    YL = delta_of(LX)
    T = L_of(YL, X.edges)
    _walk_round_trip(rep, "LX >= L(dLX)", T, LX, n)
    dT = delta_of(T)
    rep.checks["d(L(dLX)) = dLX"] = _same_metric(dT, YL)
    _walk_round_trip(rep, "L(d(L(dLX))) = L(dLX)", L_of(dT, X.edges), T, n, equal=True)
    return rep


def galois_check_dual(Y: FiniteDeltaSpace, admissible, max_len: int | None = None) -> GaloisReport:
    """Counit side of both adjunctions on a metric with admissible steps."""
    rep = GaloisReport({}, {})
    edges = _admissible(Y, admissible)
    n = max_len if max_len is not None else 2 * len(Y)
    for tag, make in (("sp", sp_of), ("L", L_of)):
        W = make(Y, edges)
        dW = delta_of(W)
        gap = _first_gap(Y, dW)
        rep.checks[f"d({tag}Y) >= Y"] = gap is None
        if gap is not None:
            rep.witnesses[f"d({tag}Y) >= Y"] = gap
        _walk_round_trip(rep, f"{tag}(d({tag}Y)) = {tag}Y", make(dW, edges), W, n, equal=True)
        rep.checks[f"d({tag}(d({tag}Y))) = d({tag}Y)"] = _same_metric(delta_of(make(dW, edges)), dW)
    return rep


@dataclass(frozen=True)
class Classification:
    geodetic: bool | None = None
    linearly_geodetic: bool | None = None
    span_metrizable: bool | None = None
    length_metrizable: bool | None = None
    linear: bool | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def classify(obj, admissible=None, max_len: int | None = None) -> Classification:
    """Decide the metrizability flags by exact round trips.

    A metric needs ``admissible`` steps and gets the two geodetic flags.  A
    chain w-space gets the three w-space flags plus the geodetic flags of
    ``delta_of(X)`` over its own edges.
    """
    if isinstance(obj, FiniteDeltaSpace):
        if admissible is None:
            raise ValidationError("a metric needs an admissible edge list to classify")
        edges = _admissible(obj, admissible)
        return Classification(
            geodetic=_same_metric(delta_of(sp_of(obj, edges)), obj),
            linearly_geodetic=_same_metric(delta_of(L_of(obj, edges)), obj),
        )
    X = obj
    Y = delta_of(X)
    return Classification(
        geodetic=_same_metric(delta_of(sp_of(Y, X.edges)), Y),
        linearly_geodetic=_same_metric(delta_of(L_of(Y, X.edges)), Y),
        span_metrizable=walkwise_equal(sp_of(Y, X.edges), X, max_len),
        length_metrizable=walkwise_equal(L_of(Y, X.edges), X, max_len),
        linear=is_linear(X, max_len),
    )


# maps ------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VertexMap:
    """Vertices to vertices and each edge to a walk between the images.

    When ``edge_map`` is omitted every edge goes to the first target edge
    with matching endpoints, or to the empty walk if both ends collapse.
    """

    source: ChainWSpace
    target: ChainWSpace
    vertex_map: dict
    edge_map: dict | None = None

    def __post_init__(self):
        S, T = self.source, self.target
        vmap = dict(self.vertex_map)
        for v in S.vertices:
            if v not in vmap:
                raise UnknownLabel(v)
            T.index(vmap[v])
        emap = {}
        given = self.edge_map
        for e, (a, b) in enumerate(S.edges):
            fa, fb = T.index(vmap[a]), T.index(vmap[b])
            if given is not None:
                img = tuple(given[e])
            else:
                img = next(((k,) for k in T.out_edges(fa) if T.tgt(k) == fb), None)
                if img is None:
                    if fa != fb:
                        raise ValidationError(f"no target edge for edge {e}")
                    img = ()
            T.check_walk(img)
            ends = (T.src(img[0]), T.tgt(img[-1])) if img else (fa, fa)
            if ends != (fa, fb):
                raise ValidationError(f"image of edge {e} does not join the image vertices")
            emap[e] = img
        object.__setattr__(self, "vertex_map", vmap)
        object.__setattr__(self, "edge_map", emap)

    def apply(self, walk: Sequence[int]) -> Walk:
        return tuple(k for e in walk for k in self.edge_map[e])

    def delta_map(self) -> dmetric.PointMap:
        return dmetric.PointMap(delta_of(self.source), delta_of(self.target), self.vertex_map)


def map_weight(f: VertexMap, max_len: int | None = None) -> ExtWeight:
    """Least ``lam`` with ``w(f a) <= lam * w(a)`` over walks up to ``max_len``."""
    best = Fraction(0)
    for walk in walks(f.source, max_len):
        r = ratio(f.target.weight(f.apply(walk)), f.source.weight(walk))
        if r > best:
            best = r
            if r is INF:
                break
    return best
