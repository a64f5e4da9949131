"""Piecewise-affine paths in the directed line, interval and circle.

The models are the directed line (``d(x, y) = y - x`` for ``x <= y``, else
infinite), its closed subintervals, their tensor powers (distances add over
coordinates) and the directed circle, where ``d(x, y) = (y - x) mod 1``.

Circle paths are stored through a real lift: ``values`` are rationals whose
differences are the signed displacements of the segments, so winding and
"locally forward" are both visible.  The points on the circle are the
fractional parts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dmetric import FiniteDeltaSpace
from .errors import EndpointMismatch
from .weights import INF, ExtWeight

KINDS = ("delta_line", "delta_interval", "delta_circle")


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("use exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True)
class AnalyticModel:
    kind: str = "delta_line"
    lo: Fraction | None = None
    hi: Fraction | None = None
    dim: int = 1
    op: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind == "delta_interval":
            lo, hi = _q(self.lo), _q(self.hi)
            if not lo < hi:
                raise ValueError("interval needs lo < hi")
            object.__setattr__(self, "lo", lo)
            object.__setattr__(self, "hi", hi)
        elif self.lo is not None or self.hi is not None:
            raise ValueError("only delta_interval takes bounds")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.kind == "delta_circle" and self.dim != 1:
            raise ValueError("tensor powers of the circle are not modelled")

    @classmethod
    def line(cls, dim: int = 1) -> "AnalyticModel":
        return cls("delta_line", dim=dim)

    @classmethod
    def interval(cls, lo=0, hi=1, dim: int = 1) -> "AnalyticModel":
        return cls("delta_interval", Fraction(lo), Fraction(hi), dim)

    @classmethod
    def circle(cls) -> "AnalyticModel":
        return cls("delta_circle")

    def opposite(self) -> "AnalyticModel":
        return AnalyticModel(self.kind, self.lo, self.hi, self.dim, not self.op)

    @property
    def sign(self) -> int:
        return -1 if self.op else 1

    def coords(self, v) -> tuple:
        if self.dim == 1:
            return (v,)
        return tuple(v)

    def contains(self, v) -> bool:
        cs = self.coords(v)
        if len(cs) != self.dim:
            return False
        if self.kind == "delta_interval":
            return all(self.lo <= c <= self.hi for c in cs)
        if self.kind == "delta_circle":
            return 0 <= cs[0] < 1
        return True

    def dist(self, x, y) -> ExtWeight:
        """Closed-form distance between carrier points."""
        if self.op:
            x, y = y, x
        if self.kind == "delta_circle":
            return (_q(y) - _q(x)) % 1
        total = Fraction(0)
        for a, b in zip(self.coords(x), self.coords(y)):
            if b < a:
                return INF
            total += b - a
        return total

    def sample(self, points: Sequence) -> FiniteDeltaSpace:
        """Finite subspace on the given carrier points."""
        pts = list(points)
        return FiniteDeltaSpace(tuple(pts), [[self.dist(x, y) for y in pts] for x in pts])


def _canon_value(model, v):
    if model.dim == 1:
        return _q(v)
    return tuple(_q(c) for c in v)


@dataclass(frozen=True)
class PLPath:
    model: AnalyticModel
    times: tuple
    values: tuple

    def __post_init__(self):
        times = tuple(_q(t) for t in self.times)
        values = tuple(_canon_value(self.model, v) for v in self.values)
        if len(times) < 2 or len(times) != len(values):
            raise ValueError("need matching times and values, at least two breakpoints")
        if times[0] != 0 or times[-1] != 1:
            raise ValueError("times must run from 0 to 1")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("times must be strictly increasing")
        if self.model.kind != "delta_circle":
            for v in values:
                if not self.model.contains(v):
                    raise ValueError(f"value {v} is outside the model carrier")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def circle(cls, times, points, op: bool = False) -> "PLPath":
        """Circle path through points of ``[0, 1)``, each segment a forward arc
        (backward arcs when ``op``).  Repeated points give constant segments."""
        model = AnalyticModel.circle()
        if op:
            model = model.opposite()
        pts = [_q(p) for p in points]
        for p in pts:
            if not 0 <= p < 1:
                raise ValueError("circle points live in [0, 1)")
        lift = [pts[0]]
        for a, b in zip(pts, pts[1:]):
            step = (b - a) % 1 if not op else -((a - b) % 1)
            lift.append(lift[-1] + step)
        return cls(model, tuple(times), tuple(lift))

    def point(self, i: int):
        """Carrier point at breakpoint ``i`` (fractional part on the circle)."""
        v = self.values[i]
        return v % 1 if self.model.kind == "delta_circle" else v

    def __call__(self, t):
        return evaluate(self, t)

    def increments(self):
        """Per-segment coordinate increments, in the model's direction."""
        s = self.model.sign
        out = []
        for a, b in zip(self.values, self.values[1:]):
            ca, cb = self.model.coords(a), self.model.coords(b)
            out.append(tuple(s * (y - x) for x, y in zip(ca, cb)))
        return out


def evaluate(path: PLPath, t):
    t = _q(t)
    if not 0 <= t <= 1:
        raise ValueError("time outside [0, 1]")
    ts, vs = path.times, path.values
    for i in range(len(ts) - 1):
        if ts[i] <= t <= ts[i + 1]:
            u = (t - ts[i]) / (ts[i + 1] - ts[i])
            if path.model.dim == 1:
                return vs[i] + u * (vs[i + 1] - vs[i])
            return tuple(a + u * (b - a) for a, b in zip(vs[i], vs[i + 1]))
    raise AssertionError("unreachable")


def _forward(path: PLPath) -> bool:
    return all(c >= 0 for inc in path.increments() for c in inc)


def span(path) -> ExtWeight:
    """Supremum of ``d(a(s), a(t))`` over ``s < t``."""
    if isinstance(path, ChainPath):
        return path.span()
    if path.model.kind == "delta_circle":
        # distances on the circle stay below 1, so the sup is at most 1
        incs = [inc[0] for inc in path.increments()]
        if any(c < 0 for c in incs):
            return Fraction(1)
        total = sum(incs, Fraction(0))
        return min(total, Fraction(1))
    if not _forward(path):
        return INF
    return path.model.dist(path.values[0], path.values[-1])


def length(path) -> ExtWeight:
    """Supremum of partition sums of consecutive distances."""
    if isinstance(path, ChainPath):
        return path.length()
    if not _forward(path):
        return INF
    return sum((c for inc in path.increments() for c in inc), Fraction(0))


def lipschitz_weight_of_path(path: PLPath) -> ExtWeight:
    """Least ``lam`` with ``d(a(t), a(t')) <= lam * (t' - t)``: the top speed."""
    if not _forward(path):
        return INF
    best = Fraction(0)
    for (t0, t1), inc in zip(zip(path.times, path.times[1:]), path.increments()):
        best = max(best, sum(inc, Fraction(0)) / (t1 - t0))
    return best


def partition_sum(path: PLPath, ts: Sequence) -> ExtWeight:
    """``L_t(a)`` for a partition ``0 = t_0 < ... < t_p = 1``."""
    pts = [evaluate(path, t) for t in ts]
    if path.model.kind == "delta_circle":
        pts = [p % 1 for p in pts]
    total = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        d = path.model.dist(a, b)
        if d is INF:
            return INF
        total += d
    return total


def concatenate(a: PLPath, b: PLPath) -> PLPath:
    """``a`` on ``[0, 1/2]`` followed by ``b`` on ``[1/2, 1]``."""
    if a.model != b.model:
        raise EndpointMismatch("paths live in different models")
    bvals = list(b.values)
    if a.model.kind == "delta_circle":
        shift = a.values[-1] - bvals[0]
        if shift.denominator != 1:
            raise EndpointMismatch(f"a ends at {a.point(-1)} but b starts at {b.point(0)}")
        bvals = [v + shift for v in bvals]
    elif a.values[-1] != bvals[0]:
        raise EndpointMismatch(f"a ends at {a.values[-1]} but b starts at {bvals[0]}")
    half = Fraction(1, 2)
    times = [t * half for t in a.times] + [half + t * half for t in b.times[1:]]
    return PLPath(a.model, tuple(times), tuple(a.values) + tuple(bvals[1:]))


def reflect(path: PLPath) -> PLPath:
    """Time reversal ``t -> 1 - t``, landing in the opposite model."""
    times = tuple(1 - t for t in reversed(path.times))
    return PLPath(path.model.opposite(), times, tuple(reversed(path.values)))


def constant(model: AnalyticModel, x) -> PLPath:
    return PLPath(model, (0, 1), (x, x))


def reparametrize(path: PLPath, rho: PLPath) -> PLPath:
    """``path . rho`` for a weakly increasing PL map ``rho: I -> I``."""
    if rho.model.kind == "delta_circle" or rho.model.dim != 1:
        raise ValueError("rho must be a real-valued PL map")
    rv = rho.values
    if any(b < a for a, b in zip(rv, rv[1:])) or rv[0] < 0 or rv[-1] > 1:
        raise ValueError("rho must be weakly increasing into [0, 1]")
    cuts = set(rho.times)
    for (t0, t1), (v0, v1) in zip(zip(rho.times, rho.times[1:]), zip(rv, rv[1:])):
        if v1 == v0:
            continue
        for s in path.times:
            if v0 < s < v1:
                cuts.add(t0 + (s - v0) / (v1 - v0) * (t1 - t0))
    times = sorted(cuts)
    return PLPath(path.model, tuple(times), tuple(evaluate(path, evaluate(rho, t)) for t in times))


def scale_values(path: PLPath, lam) -> PLPath:
    """Image under ``x -> lam * x``, a map of the line with weight ``lam``."""
    lam = _q(lam)
    if path.model.kind != "delta_line":
        raise ValueError("scaling is defined on line models")
    if path.model.dim == 1:
        vals = tuple(lam * v for v in path.values)
    else:
        vals = tuple(tuple(lam * c for c in v) for v in path.values)
    return PLPath(path.model, path.times, vals)


def tensor_pair(a: PLPath, b: PLPath) -> PLPath:
    """The path ``t -> (a(t), b(t))`` in the tensor of two line models."""
    for p in (a, b):
        if p.model.kind == "delta_circle" or p.model.op:
            raise ValueError("tensor pairing needs forward line or interval models")
    model = AnalyticModel.line(a.model.dim + b.model.dim)
    if a.model.kind == b.model.kind == "delta_interval" and (a.model.lo, a.model.hi) == (b.model.lo, b.model.hi):
        model = AnalyticModel.interval(a.model.lo, a.model.hi, a.model.dim + b.model.dim)
    times = sorted(set(a.times) | set(b.times))
    vals = tuple(a.model.coords(evaluate(a, t)) + b.model.coords(evaluate(b, t)) for t in times)
    return PLPath(model, tuple(times), vals)


def sqrt_approximant(n: int) -> PLPath:
    """PL interpolation of the square root on ``(k/n)^2``; length 1, weight n."""
    if n < 1:
        raise ValueError("n must be positive")
    times = tuple(Fraction(k * k, n * n) for k in range(n + 1))
    values = tuple(Fraction(k, n) for k in range(n + 1))
    return PLPath(AnalyticModel.interval(0, 1), times, values)


@dataclass(frozen=True)
class ChainPath:
    space: FiniteDeltaSpace
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        if not vs:
            raise ValueError("a chain path needs at least one vertex")
        for v in vs:
            self.space.index(v)
        object.__setattr__(self, "vertices", vs)

    def _d(self, x, y):
        return self.space.dist(x, y)

    def span(self) -> ExtWeight:
        vs = self.vertices
        best = Fraction(0)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                best = max(best, self._d(vs[i], vs[j]))
        return best

    def length(self) -> ExtWeight:
        total = Fraction(0)
        for a, b in zip(self.vertices, self.vertices[1:]):
            total = total + self._d(a, b)
        return total

    def concat(self, other: "ChainPath") -> "ChainPath":
        if self.vertices[-1] != other.vertices[0]:
            raise EndpointMismatch("chains are not consecutive")
        return ChainPath(self.space, self.vertices + other.vertices[1:])


# interval lattice ------------------------------------------------------------

@dataclass
class LatticeReport:
    checked: list
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def _grid(den: int):
    return [Fraction(k, den) for k in range(den + 1)]


def interval_lattice_check(den: int = 16) -> LatticeReport:
    """Check the cubical-monad and reflection equations of the directed interval.

    Elements of ``I^k X`` are tuples whose last ``k`` entries are cylinder
    coordinates; ``X`` is taken to be a point and the interval itself, so that
    whiskered forms are exercised.  All maps are piecewise affine with
    breakpoints on the grid, hence agreement on the grid is agreement.
    """
    G = _grid(den)
    lo, hi = Fraction(0), Fraction(1)
    face = {"-": lo, "+": hi}
    conn = {"-": max, "+": min}
    checked, failures = [], []

    def points(n):
        out = [()]
        for _ in range(n):
            out = [p + (t,) for p in out for t in G]
        return out

    def check(name, f, g, dom):
        checked.append(name)
        for p in dom:
            if f(p) != g(p):
                failures.append((name, p))
                return

    for xdim in (0, 1):
        tag = f"[X=I^{xdim}]"
        IX, I2X, I3X = points(xdim + 1), points(xdim + 2), points(xdim + 3)
        X = points(xdim)
        ident = lambda p: p
        e = lambda p: p[:-1]
        eI = lambda p: p[:-1]
        Ie = lambda p: p[:-2] + p[-1:]
        s = lambda p: p[:-2] + (p[-1], p[-2])
        for a, fa in face.items():
            b = "+" if a == "-" else "-"
            d = lambda p, fa=fa: p + (fa,)
            dI = lambda p, fa=fa: p + (fa,)
            Id = lambda p, fa=fa: p[:-1] + (fa, p[-1])
            g = lambda p, a=a: p[:-2] + (conn[a](p[-2], p[-1]),)
            gb = lambda p, b=b: p[:-2] + (conn[b](p[-2], p[-1]),)
            gI = lambda p, a=a: p[:-2] + (conn[a](p[-2], p[-1]),)
            Ig = lambda p, a=a: p[:-3] + (conn[a](p[-3], p[-2]), p[-1])
            check(f"e.d{a} = 1 {tag}", lambda p: e(d(p)), ident, X)
            check(f"e.g{a} = e.Ie {tag}", lambda p: e(g(p)), lambda p: e(Ie(p)), I2X)
            check(f"e.g{a} = e.eI {tag}", lambda p: e(g(p)), lambda p: e(eI(p)), I2X)
            check(f"g{a}.Ig{a} = g{a}.g{a}I {tag}", lambda p: g(Ig(p)), lambda p: g(gI(p)), I3X)
            check(f"g{a}.Id{a} = 1 {tag}", lambda p: g(Id(p)), ident, IX)
            check(f"g{a}.d{a}I = 1 {tag}", lambda p: g(dI(p)), ident, IX)
            check(f"g{b}.Id{a} = d{a}.e {tag}", lambda p: gb(Id(p)), lambda p: d(e(p)), IX)
            check(f"g{b}.d{a}I = d{a}.e {tag}", lambda p: gb(dI(p)), lambda p: d(e(p)), IX)
            check(f"s.Id{a} = d{a}I {tag}", lambda p: s(Id(p)), dI, IX)
            check(f"g{a}.s = g{a} {tag}", lambda p: g(s(p)), g, I2X)
        check(f"s.s = 1 {tag}", lambda p: s(s(p)), ident, I2X)
        check(f"Ie.s = eI {tag}", lambda p: Ie(s(p)), eI, I2X)

        r = lambda p: p[:-1] + (1 - p[-1],)
        r2 = lambda p: p[:-2] + (1 - p[-2], 1 - p[-1])
        check(f"RrR.r = 1 {tag}", lambda p: r(r(p)), ident, IX)
        check(f"R.e.r = eR {tag}", lambda p: e(r(p)), e, IX)
        check(f"r.d-R = Rd+ {tag}", lambda p: r(p + (lo,)), lambda p: p + (hi,), X)
        check(f"r.g-R = Rg+.r2 {tag}",
              lambda p: r(p[:-2] + (max(p[-2], p[-1]),)),
              lambda p: (lambda q: q[:-2] + (min(q[-2], q[-1]),))(r2(p)), I2X)
        check(f"R.s.r2 = r2.sR {tag}", lambda p: s(r2(p)), lambda p: r2(s(p)), I2X)

    # structure maps are weak contractions for the l1 directed distance
    def dl1(p, q):
        tot = Fraction(0)
        for a, b in zip(p, q):
            if b < a:
                return INF
            tot += b - a
        return tot

    I2 = points(2)
    coarse = [p for p in I2 if all((c * 4).denominator == 1 for c in p)]
    for name, f in (("g- short", lambda p: (max(p),)), ("g+ short", lambda p: (min(p),)),
                    ("s short", lambda p: (p[1], p[0])), ("e short", lambda p: p[:-1])):
        checked.append(name)
        for p in coarse:
            bad = next((q for q in coarse if dl1(f(p), f(q)) > dl1(p, q)), None)
            if bad is not None:
                failures.append((name, (p, bad)))
                break
    checked.append("r isometry onto the opposite")
    for p in points(1):
        bad = next((q for q in points(1) if dl1((1 - q[0],), (1 - p[0],)) != dl1(p, q)), None)
        if bad is not None:
            failures.append(("r isometry onto the opposite", (p, bad)))
            break
    return LatticeReport(checked, failures)


def circle_points(den: int):
    return [Fraction(k, den) for k in range(den)]
