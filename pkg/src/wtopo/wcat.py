"""Finite additively weighted categories.

A category is given by a total composition table.  Composition is written in
diagrammatic order: ``compose(a, b)`` is "first ``a``, then ``b``" and needs
``tgt(a) == src(b)``.  Weights live in ``[0, inf]``; identities weigh 0 and
weights are subadditive along composites.

Besides the category-level constructions (tensor, internal hom, opposite,
full subcategories), this module searches for reflective subcategories with
small Lipschitz data (future and past spectra) and builds pushouts of
categories by bounded word saturation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .dmetric import FiniteDeltaSpace
from .errors import (NoRetractFound, NotACategory, SizeLimitExceeded, UnknownObject,
                     WeightAxiomViolation)
from .weights import INF, ExtWeight, ext, ratio

DEFAULT_CAP = 10**5


@dataclass(frozen=True, eq=False)
class FiniteWeightedCategory:
    objects: tuple
    morphisms: dict
    identities: dict
    composition: dict
    weight: dict
    _hom: dict = field(init=False, repr=False)
    _ids: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        objects = tuple(self.objects)
        if len(set(objects)) != len(objects):
            raise NotACategory("object labels must be distinct")
        morphisms = {m: (s, t) for m, (s, t) in self.morphisms.items()}
        weight = {m: ext(self.weight[m]) if m in self.weight else None for m in morphisms}
        missing = [m for m, w in weight.items() if w is None]
        if missing:
            raise NotACategory(f"morphism {missing[0]!r} has no weight")
        hom = {(x, y): [] for x in objects for y in objects}
        for m, (s, t) in morphisms.items():
            if (s, t) not in hom:
                raise NotACategory(f"morphism {m!r} has an endpoint outside the objects")
            hom[(s, t)].append(m)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "morphisms", morphisms)
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "composition", dict(self.composition))
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})
        object.__setattr__(self, "_ids", frozenset(self.identities.values()))

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def hom(self, x, y) -> tuple:
        try:
            return self._hom[(x, y)]
        except KeyError:
            raise UnknownObject(x if x not in self.objects else y) from None

    def identity(self, x):
        return self.identities[x]

    def is_identity(self, m) -> bool:
        return m in self._ids

    def compose(self, a, b):
        """``a`` then ``b``."""
        return self.composition[(a, b)]

    def w(self, m) -> ExtWeight:
        return self.weight[m]

    def non_identities(self) -> list:
        return [m for m in self.morphisms if m not in self._ids]

    def composable_pairs(self) -> Iterator[tuple]:
        for a, (_, t) in self.morphisms.items():
            for y in self.objects:
                for b in self._hom[(t, y)]:
                    yield a, b

    def __len__(self):
        return len(self.morphisms)


# validation ------------------------------------------------------------------

def validate_wcat(C: FiniteWeightedCategory | dict) -> FiniteWeightedCategory:
    """Check category laws and the two weight axioms, naming a witness."""
    if isinstance(C, dict):
        C = FiniteWeightedCategory(C["objects"], C["morphisms"], C["identities"],
                                   C["composition"], C["weight"])
    for x in C.objects:
        if x not in C.identities:
            raise NotACategory(f"object {x!r} has no identity")
        i = C.identities[x]
        if i not in C.morphisms or C.morphisms[i] != (x, x):
            raise NotACategory(f"identity of {x!r} is not an endomorphism of {x!r}")
    for a, b in C.composable_pairs():
        if (a, b) not in C.composition:
            raise NotACategory(f"composite of {a!r} and {b!r} is missing")
        c = C.composition[(a, b)]
        if c not in C.morphisms or C.morphisms[c] != (C.src(a), C.tgt(b)):
            raise NotACategory(f"composite of {a!r} and {b!r} has the wrong endpoints")
    for (a, b) in C.composition:
        if a not in C.morphisms or b not in C.morphisms or C.tgt(a) != C.src(b):
            raise NotACategory(f"table entry for non-composable pair ({a!r}, {b!r})")
    for m, (s, t) in C.morphisms.items():
        if C.compose(C.identities[s], m) != m or C.compose(m, C.identities[t]) != m:
            raise NotACategory(f"unit law fails at {m!r}")
    for a, b in C.composable_pairs():
        ab = C.compose(a, b)
        for z in C.objects:
            for c in C.hom(C.tgt(b), z):
                if C.compose(ab, c) != C.compose(a, C.compose(b, c)):
                    raise NotACategory(f"associativity fails at ({a!r}, {b!r}, {c!r})")
    for x in C.objects:
        if C.w(C.identities[x]) != 0:
            raise WeightAxiomViolation(C.identities[x])
    for a, b in C.composable_pairs():
        if C.w(C.compose(a, b)) > C.w(a) + C.w(b):
            raise WeightAxiomViolation(a, b)
    return C


def is_linear(C: FiniteWeightedCategory) -> bool:
    return all(C.w(C.compose(a, b)) == C.w(a) + C.w(b) for a, b in C.composable_pairs())


# constructors ----------------------------------------------------------------

def thin_category(space: FiniteDeltaSpace) -> FiniteWeightedCategory:
    """Preorder category of ``d < inf`` with weight ``d``; ids are ``(x, y)``."""
    pts = space.points
    n = len(pts)
    mors, weight = {}, {}
    for i in range(n):
        for j in range(n):
            if space.d[i][j] is not INF:
                mors[(pts[i], pts[j])] = (pts[i], pts[j])
                weight[(pts[i], pts[j])] = space.d[i][j]
    comp = {(a, b): (a[0], b[1]) for a in mors for b in mors if a[1] == b[0]}
    return FiniteWeightedCategory(pts, mors, {x: (x, x) for x in pts}, comp, weight)


def directed_interval() -> FiniteWeightedCategory:
    """``0 -> 1`` with the arrow of weight 1."""
    return thin_category(FiniteDeltaSpace((0, 1), [[0, 1], [INF, 0]]))


def terminal_wcat() -> FiniteWeightedCategory:
    return FiniteWeightedCategory(("*",), {"0*": ("*", "*")}, {"*": "0*"},
                                  {("0*", "0*"): "0*"}, {"0*": 0})


def free_category(objects: Iterable, arrows: dict, weights: dict | None = None,
                  cap: int = DEFAULT_CAP) -> FiniteWeightedCategory:
    """Free category on an acyclic quiver.

    ``arrows`` maps a name to ``(src, tgt)``; morphisms are tuples of arrow
    names (the empty tuple at ``x`` is ``("id", x)``).  ``weights`` gives arrow
    weights (default 1) and paths weigh the sum, so the weight is linear.
    """
    objects = tuple(objects)
    out = {x: [] for x in objects}
    for name, (s, t) in arrows.items():
        out[s].append(name)
    paths = []
    frontier = [((name,), s, t) for name, (s, t) in arrows.items()]
    while frontier:
        paths.extend(frontier)
        if len(paths) > cap:
            raise SizeLimitExceeded("free category", cap)
        nxt = []
        for p, s, t in frontier:
            for name in out[t]:
                if len(p) >= len(objects) + len(arrows):
                    raise ValueError("quiver has a cycle; free category is infinite")
                nxt.append((p + (name,), s, arrows[name][1]))
        frontier = nxt
    aw = {name: ext(1 if weights is None else weights[name]) for name in arrows}
    mors, weight = {}, {}
    ids = {x: ("id", x) for x in objects}
    for x in objects:
        mors[ids[x]] = (x, x)
        weight[ids[x]] = Fraction(0)
    for p, s, t in paths:
        mors[p] = (s, t)
        total = Fraction(0)
        for name in p:
            total = total + aw[name]
        weight[p] = total
    comp = {}
    for a, (sa, ta) in mors.items():
        for b, (sb, tb) in mors.items():
            if ta != sb:
                continue
            if a == ids[sa]:
                comp[(a, b)] = b
            elif b == ids[sb]:
                comp[(a, b)] = a
            else:
                comp[(a, b)] = a + b
    return FiniteWeightedCategory(objects, mors, ids, comp, weight)


def reweight(C: FiniteWeightedCategory, weights: dict) -> FiniteWeightedCategory:
    """Same category, new weights (missing entries keep the old ones)."""
    w = dict(C.weight)
    w.update({k: ext(v) for k, v in weights.items()})
    return FiniteWeightedCategory(C.objects, C.morphisms, C.identities, C.composition, w)


def subadditive_closure(C: FiniteWeightedCategory) -> FiniteWeightedCategory:
    """Largest weight below ``C.weight`` satisfying the composite axiom."""
    w = dict(C.weight)
    for x in C.objects:
        w[C.identities[x]] = Fraction(0)
    changed = True
    while changed:
        changed = False
        for a, b in C.composable_pairs():
            c = C.compose(a, b)
            s = w[a] + w[b]
            if s < w[c]:
                w[c] = s
                changed = True
    return reweight(C, w)


def scale_wcat(C: FiniteWeightedCategory, lam) -> FiniteWeightedCategory:
    lam = ext(lam)
    return reweight(C, {m: (INF if v is INF else lam * v) for m, v in C.weight.items()})


def opposite_wcat(C: FiniteWeightedCategory) -> FiniteWeightedCategory:
    mors = {m: (t, s) for m, (s, t) in C.morphisms.items()}
    comp = {(b, a): c for (a, b), c in C.composition.items()}
    return FiniteWeightedCategory(C.objects, mors, C.identities, comp, C.weight)


def full_subcategory(C: FiniteWeightedCategory, objs: Iterable) -> FiniteWeightedCategory:
    keep = set(objs)
    for x in keep:
        if x not in C.identities:
            raise UnknownObject(x)
    objects = tuple(x for x in C.objects if x in keep)
    mors = {m: st for m, st in C.morphisms.items() if st[0] in keep and st[1] in keep}
    comp = {k: v for k, v in C.composition.items() if k[0] in mors and k[1] in mors}
    return FiniteWeightedCategory(objects, mors, {x: C.identities[x] for x in objects}, comp,
                                  {m: C.weight[m] for m in mors})


def tensor_wcat(X: FiniteWeightedCategory, Y: FiniteWeightedCategory) -> FiniteWeightedCategory:
    """Product category with additive weight ``w(a) + w(b)``."""
    objects = tuple(itertools.product(X.objects, Y.objects))
    mors, weight = {}, {}
    for a, (sa, ta) in X.morphisms.items():
        for b, (sb, tb) in Y.morphisms.items():
            mors[(a, b)] = ((sa, sb), (ta, tb))
            weight[(a, b)] = X.w(a) + Y.w(b)
    comp = {}
    for (a, b) in mors:
        for (a2, b2) in mors:
            if X.tgt(a) == X.src(a2) and Y.tgt(b) == Y.src(b2):
                comp[((a, b), (a2, b2))] = (X.compose(a, a2), Y.compose(b, b2))
    ids = {(x, y): (X.identities[x], Y.identities[y]) for x, y in objects}
    return FiniteWeightedCategory(objects, mors, ids, comp, weight)


def monoid_category(elements, table: dict, unit, weights: dict, obj="*") -> FiniteWeightedCategory:
    """One-object category from a monoid table ``(a, b) -> a.b`` (a first)."""
    mors = {e: (obj, obj) for e in elements}
    return FiniteWeightedCategory((obj,), mors, {obj: unit}, dict(table), weights)


# functors --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WFunctor:
    source: FiniteWeightedCategory
    target: FiniteWeightedCategory
    obj: dict
    mor: dict

    def __call__(self, m):
        return self.mor[m]

    def key(self) -> tuple:
        return (tuple(self.obj[x] for x in self.source.objects),
                tuple(self.mor[m] for m in self.source.morphisms))

    def __eq__(self, other):
        return (isinstance(other, WFunctor) and self.source is other.source
                and self.target is other.target and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())


def check_functor(F: WFunctor) -> list:
    """Functoriality violations (empty when ``F`` is a functor)."""
    X, Y = F.source, F.target
    bad = []
    for x in X.objects:
        if F.obj.get(x) not in Y.identities:
            bad.append(("object", x))
        elif F.mor.get(X.identities[x]) != Y.identities[F.obj[x]]:
            bad.append(("identity", x))
    if bad:
        return bad
    for m, (s, t) in X.morphisms.items():
        fm = F.mor.get(m)
        if fm not in Y.morphisms or Y.morphisms[fm] != (F.obj[s], F.obj[t]):
            bad.append(("endpoints", m))
    if bad:
        return bad
    for a, b in X.composable_pairs():
        if F.mor[X.compose(a, b)] != Y.compose(F.mor[a], F.mor[b]):
            bad.append(("composition", (a, b)))
    return bad


def identity_functor(C: FiniteWeightedCategory) -> WFunctor:
    return WFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms})


def inclusion_functor(sub: FiniteWeightedCategory, C: FiniteWeightedCategory) -> WFunctor:
    return WFunctor(sub, C, {x: x for x in sub.objects}, {m: m for m in sub.morphisms})


def compose_functors(F: WFunctor, G: WFunctor) -> WFunctor:
    """``F`` then ``G``."""
    return WFunctor(F.source, G.target, {x: G.obj[F.obj[x]] for x in F.source.objects},
                    {m: G.mor[F.mor[m]] for m in F.source.morphisms})


def _ratio(ws, wt) -> ExtWeight:
    if wt == 0 or ws is INF:
        return Fraction(0)
    return ratio(wt, ws)


def functor_lipschitz_weight(F: WFunctor) -> ExtWeight:
    """Least ``lam`` with ``w(F a) <= lam * w(a)`` for every morphism."""
    best = Fraction(0)
    for m in F.source.non_identities():
        r = _ratio(F.source.w(m), F.target.w(F.mor[m]))
        if r is INF:
            return INF
        best = max(best, r)
    return best


def _plan(X):
    """Order non-identity morphisms and schedule composition checks."""
    order = X.non_identities()
    pos = {m: i for i, m in enumerate(order)}
    checks = [[] for _ in order]
    for a, b in X.composable_pairs():
        if X.is_identity(a) or X.is_identity(b):
            continue
        c = X.compose(a, b)
        k = max(pos[a], pos[b], pos.get(c, -1))
        checks[k].append((a, b, c))
    touched = {x for m in order for x in X.morphisms[m]}
    free = [x for x in X.objects if x not in touched]
    return order, checks, free


def enumerate_functors(X: FiniteWeightedCategory, Y: FiniteWeightedCategory,
                       max_weight=None, obj_map: dict | None = None,
                       cap: int | None = None) -> Iterator[WFunctor]:
    """All functors ``X -> Y``, optionally only those of weight ``<= max_weight``.

    Backtracks over the non-identity morphisms, fixing objects lazily and
    checking each composite as soon as its three members are known.
    """
    lam = None if max_weight is None else ext(max_weight)
    order, checks, free = _plan(X)
    omap = dict(obj_map or {})
    mmap = {}
    count = [0]

    def image(m):
        if X.is_identity(m):
            return Y.identities[omap[X.src(m)]]
        return mmap[m]

    def allowed(m, cand):
        if lam is None:
            return True
        wt = Y.w(cand)
        if wt == 0:
            return True
        ws = X.w(m)
        if ws is INF:
            return True
        return wt <= lam * ws if lam is not INF else True

    def objects_for(x):
        if x in omap:
            yield omap[x]
            return
        for y in Y.objects:
            omap[x] = y
            yield y
            del omap[x]

    def go(i):
        if i == len(order):
            yield from finish(0)
            return
        m = order[i]
        s, t = X.morphisms[m]
        for _ in objects_for(s):
            for _ in objects_for(t):
                for cand in Y.hom(omap[s], omap[t]):
                    if not allowed(m, cand):
                        continue
                    mmap[m] = cand
                    if all(Y.compose(image(a), image(b)) == image(c) for a, b, c in checks[i]):
                        yield from go(i + 1)
                    del mmap[m]

    def finish(j):
        if j == len(free):
            count[0] += 1
            if cap is not None and count[0] > cap:
                raise SizeLimitExceeded("functor enumeration", cap)
            full = dict(mmap)
            for x in X.objects:
                full[X.identities[x]] = Y.identities[omap[x]]
            yield WFunctor(X, Y, dict(omap), full)
            return
        for _ in objects_for(free[j]):
            yield from finish(j + 1)

    yield from go(0)


def count_short_functors(X, Y, cap: int | None = None) -> int:
    return sum(1 for _ in enumerate_functors(X, Y, max_weight=1, cap=cap))


# natural transformations -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class WNatTrans:
    source: WFunctor
    target: WFunctor
    components: dict

    def __call__(self, x):
        return self.components[x]


def naturality_violations(phi: WNatTrans) -> list:
    F, G = phi.source, phi.target
    X, Y = F.source, F.target
    bad = []
    for x in X.objects:
        c = phi.components.get(x)
        if c not in Y.morphisms or Y.morphisms[c] != (F.obj[x], G.obj[x]):
            bad.append(("component", x))
    if bad:
        return bad
    for m, (s, t) in X.morphisms.items():
        if Y.compose(F.mor[m], phi.components[t]) != Y.compose(phi.components[s], G.mor[m]):
            bad.append(("naturality", m))
    return bad


def nat_trans_weights(phi: WNatTrans) -> tuple:
    """``(reduced, global)``: top component weight, and that joined with both
    functor weights."""
    Y = phi.source.target
    reduced = max((Y.w(c) for c in phi.components.values()), default=Fraction(0))
    glob = max(functor_lipschitz_weight(phi.source), functor_lipschitz_weight(phi.target), reduced)
    return reduced, glob


def is_elementary(phi: WNatTrans) -> bool:
    reduced, glob = nat_trans_weights(phi)
    return glob <= 1


def enumerate_nat_trans(F: WFunctor, G: WFunctor) -> Iterator[dict]:
    X, Y = F.source, F.target
    objs = list(X.objects)
    pos = {x: i for i, x in enumerate(objs)}
    # naturality of m: s -> t is checked once both components are chosen
    checks = [[] for _ in objs]
    for m, (s, t) in X.morphisms.items():
        if not X.is_identity(m):
            checks[max(pos[s], pos[t])].append((m, s, t))
    comp = {}

    def go(i):
        if i == len(objs):
            yield dict(comp)
            return
        x = objs[i]
        for c in Y.hom(F.obj[x], G.obj[x]):
            comp[x] = c
            if all(Y.compose(F.mor[m], comp[t]) == Y.compose(comp[s], G.mor[m])
                   for m, s, t in checks[i]):
                yield from go(i + 1)
            del comp[x]

    yield from go(0)


def hom_wcat(Y: FiniteWeightedCategory, Z: FiniteWeightedCategory,
             cap: int = DEFAULT_CAP) -> FiniteWeightedCategory:
    """Internal hom: 1-Lipschitz functors and all natural transformations,
    weighted by the largest component weight.

    Objects are functor keys ``(object images, morphism images)``; morphisms
    are ``(source key, target key, component tuple)``.
    """
    functors = list(enumerate_functors(Y, Z, max_weight=1, cap=cap))
    keys = [F.key() for F in functors]
    mors, weight, ids = {}, {}, {}
    for F, kF in zip(functors, keys):
        for G, kG in zip(functors, keys):
            for comp in enumerate_nat_trans(F, G):
                tup = tuple(comp[y] for y in Y.objects)
                m = (kF, kG, tup)
                mors[m] = (kF, kG)
                weight[m] = max((Z.w(c) for c in tup), default=Fraction(0))
                if len(mors) > cap:
                    raise SizeLimitExceeded("internal hom", cap)
        ids[kF] = (kF, kF, tuple(Z.identities[F.obj[y]] for y in Y.objects))
    by_src = {}
    for m, (s, t) in mors.items():
        by_src.setdefault(s, []).append(m)
    comp_table = {}
    for a, (s, t) in mors.items():
        for b in by_src.get(t, ()):
            c = (s, mors[b][1], tuple(Z.compose(p, q) for p, q in zip(a[2], b[2])))
            comp_table[(a, b)] = c
    return FiniteWeightedCategory(tuple(keys), mors, ids, comp_table, weight)


def curry(f: WFunctor, X: FiniteWeightedCategory, Y: FiniteWeightedCategory,
          ZY: FiniteWeightedCategory) -> WFunctor:
    """Transpose of ``f: X (x) Y -> Z`` into ``X -> Z^Y``."""

    def fkey(x):
        return (tuple(f.obj[(x, y)] for y in Y.objects),
                tuple(f.mor[(X.identities[x], b)] for b in Y.morphisms))

    obj = {x: fkey(x) for x in X.objects}
    mor = {}
    for a, (s, t) in X.morphisms.items():
        comps = tuple(f.mor[(a, Y.identities[y])] for y in Y.objects)
        mor[a] = (obj[s], obj[t], comps)
    return WFunctor(X, ZY, obj, mor)


# future equivalence and spectra ------------------------------------------------

@dataclass
class EquivalenceReport:
    violations: list
    weights: dict

    @property
    def valid(self) -> bool:
        """Coherent, natural, with every weight finite."""
        return not self.violations and all(v is not INF for v in self.weights.values())

    @property
    def elementary(self) -> bool:
        return self.valid and all(v <= 1 for v in self.weights.values())


def check_future_equivalence(f: WFunctor, g: WFunctor, phi: WNatTrans, psi: WNatTrans) -> EquivalenceReport:
    """Check ``phi: 1 -> gf``, ``psi: 1 -> fg`` and coherence ``f.phi = psi.f``,
    ``phi.g = g.psi``."""
    C, D = f.source, f.target
    bad = []
    for tag, F in (("f", f), ("g", g)):
        bad += [(tag,) + v for v in check_functor(F)]
    if g.source is not D or g.target is not C:
        bad.append(("shape", "g must go back from the target of f"))
    if bad:
        return EquivalenceReport(bad, {})
    for tag, eta, dom in (("phi", phi, C), ("psi", psi, D)):
        F, G = eta.source, eta.target
        first, second = (f, g) if tag == "phi" else (g, f)
        for x in dom.objects:
            if F.obj[x] != x or G.obj[x] != second.obj[first.obj[x]]:
                bad.append((tag, "endpoints", x))
        bad += [(tag,) + v for v in naturality_violations(eta)]
    if not bad:
        for x in C.objects:
            if f.mor[phi.components[x]] != psi.components[f.obj[x]]:
                bad.append(("coherence f.phi = psi.f", x))
        for y in D.objects:
            if phi.components[g.obj[y]] != g.mor[psi.components[y]]:
                bad.append(("coherence phi.g = g.psi", y))
    weights = {
        "f": functor_lipschitz_weight(f),
        "g": functor_lipschitz_weight(g),
        "phi": nat_trans_weights(phi)[0],
        "psi": nat_trans_weights(psi)[0],
    }
    return EquivalenceReport(bad, weights)


def _universal_arrows(C, x, F):
    """Arrows ``u: x -> y`` (``y`` in ``F``) through which every arrow from ``x``
    into ``F`` factors uniquely."""
    out = []
    for y in F:
        for u in C.hom(x, y):
            good = True
            for z in F:
                hyz, hxz = C.hom(y, z), C.hom(x, z)
                imgs = {C.compose(u, g) for g in hyz}
                if len(imgs) != len(hyz) or imgs != set(hxz):
                    good = False
                    break
            if good:
                out.append(u)
    return out


@dataclass
class Reflection:
    subset: tuple
    sub: FiniteWeightedCategory
    reflector: WFunctor
    unit: dict
    reflector_weight: ExtWeight
    unit_weight: ExtWeight

    def as_equivalence(self, C: FiniteWeightedCategory):
        """The quadruple ``(p, i; eta, 1)`` as functors and transformations."""
        i = inclusion_functor(self.sub, C)
        ip = compose_functors(self.reflector, i)
        phi = WNatTrans(identity_functor(C), ip, dict(self.unit))
        pi = compose_functors(i, self.reflector)
        psi = WNatTrans(identity_functor(self.sub), pi,
                        {y: self.sub.identities[y] for y in self.sub.objects})
        return self.reflector, i, phi, psi


def reflections(C: FiniteWeightedCategory, subset: Iterable, combo_cap: int = 10**4) -> Iterator[Reflection]:
    """All reflections onto the full subcategory on ``subset`` with trivial
    counit (one per choice of universal arrows)."""
    F = [x for x in C.objects if x in set(subset)]
    Fset = set(F)
    choices = []
    for x in C.objects:
        if x in Fset:
            choices.append([C.identities[x]])
        else:
            us = _universal_arrows(C, x, F)
            if not us:
                return
            choices.append(us)
    total = 1
    for c in choices:
        total *= len(c)
    if total > combo_cap:
        raise SizeLimitExceeded("universal-arrow choices", combo_cap)
    sub = full_subcategory(C, F)
    for pick in itertools.product(*choices):
        unit = dict(zip(C.objects, pick))
        r = {x: C.tgt(unit[x]) for x in C.objects}
        mor = {}
        ok = True
        for m, (s, t) in C.morphisms.items():
            target = C.compose(m, unit[t])
            hits = [g for g in C.hom(r[s], r[t]) if C.compose(unit[s], g) == target]
            if len(hits) != 1:
                ok = False
                break
            mor[m] = hits[0]
        if not ok:
            continue
        P = WFunctor(C, sub, r, mor)
        uw = max((C.w(u) for u in unit.values()), default=Fraction(0))
        yield Reflection(tuple(F), sub, P, unit, functor_lipschitz_weight(P), uw)


@dataclass
class Spectrum:
    objects: tuple
    multiple: bool
    minima: list
    reflection: Reflection


def future_spectrum(C: FiniteWeightedCategory, elementary: bool = False) -> Spectrum:
    """Smallest full reflective subcategory with trivial counit and Lipschitz
    reflection data.

    By default the reflector and unit need finite weights (future equivalence
    with Lipschitz functors).  With ``elementary=True`` both must be at most 1.
    Subsets are tried by size, then in the order of ``C.objects``.
    """
    bound = Fraction(1) if elementary else None

    def fits(R):
        if bound is None:
            return R.reflector_weight is not INF and R.unit_weight is not INF
        return R.reflector_weight <= bound and R.unit_weight <= bound

    for k in range(1, len(C.objects) + 1):
        found = []
        for subset in itertools.combinations(C.objects, k):
            best = None
            for R in reflections(C, subset):
                if fits(R) and (best is None or (R.reflector_weight, R.unit_weight)
                                < (best.reflector_weight, best.unit_weight)):
                    best = R
            if best is not None:
                found.append((subset, best))
        if found:
            return Spectrum(found[0][0], len(found) > 1, [s for s, _ in found], found[0][1])
    if not C.objects:
        return Spectrum((), False, [()], None)
    raise NoRetractFound("no subset admits a reflection")


def past_spectrum(C: FiniteWeightedCategory, elementary: bool = False) -> Spectrum:
    """Dual search: a coreflective subcategory, found as a reflective one in
    the opposite category."""
    return future_spectrum(opposite_wcat(C), elementary)


# pushouts ----------------------------------------------------------------------

@dataclass
class Pushout:
    category: FiniteWeightedCategory
    v1: WFunctor
    v2: WFunctor
    words: dict


def _letter_graph_acyclic(nodes, arcs) -> bool:
    indeg = {n: 0 for n in nodes}
    out = {n: [] for n in nodes}
    for s, t in arcs:
        out[s].append(t)
        indeg[t] += 1
    stack = [n for n in nodes if indeg[n] == 0]
    seen = 0
    while stack:
        n = stack.pop()
        seen += 1
        for t in out[n]:
            indeg[t] -= 1
            if indeg[t] == 0:
                stack.append(t)
    return seen == len(nodes)


def pushout_wcat(u1: WFunctor, u2: WFunctor, max_len: int = 8,
                 cap: int = DEFAULT_CAP) -> Pushout:
    """Pushout of ``C1 <- C0 -> C2`` in weighted categories.

    Morphisms are classes of composable words of non-identity morphisms of
    ``C1`` and ``C2`` modulo composing adjacent letters of the same piece and
    trading ``u1(c)`` for ``u2(c)``.  The weight of a class is the least total
    weight of its words.  When no chain of letters can cycle, every word is
    shorter than the number of objects and the result is exact; otherwise
    words are saturated up to ``max_len`` and the result is accepted only if
    it has stabilised, else :class:`SizeLimitExceeded` is raised.
    """
    C0, C1, C2 = u1.source, u1.target, u2.target
    if u2.source is not C0:
        raise ValueError("u1 and u2 must share their source")
    cats = {1: C1, 2: C2}
    # objects ---------------------------------------------------------------
    nodes = [(1, x) for x in C1.objects] + [(2, x) for x in C2.objects]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for c in C0.objects:
        a, b = find((1, u1.obj[c])), find((2, u2.obj[c]))
        if a != b:
            parent[b] = a
    classes = {}
    for n in nodes:
        classes.setdefault(find(n), []).append(n)
    roots = [r for r in nodes if find(r) == r]
    plain = [r[1] for r in roots]
    label = {r: (r[1] if len(set(plain)) == len(plain) else r) for r in roots}
    obj_of = {n: label[find(n)] for n in nodes}
    objects = tuple(label[r] for r in roots)
    # letters ---------------------------------------------------------------
    letters = []
    for i, C in cats.items():
        for m in C.non_identities():
            s, t = C.morphisms[m]
            letters.append(((i, m), obj_of[(i, s)], obj_of[(i, t)]))
    lsrc = {l: s for l, s, _ in letters}
    ltgt = {l: t for l, _, t in letters}
    lw = {(i, m): cats[i].w(m) for (i, m), _, _ in letters}
    out = {x: [] for x in objects}
    for l, s, t in letters:
        out[s].append(l)
    acyclic = _letter_graph_acyclic(objects, [(s, t) for _, s, t in letters])
    bound = len(objects) - 1 if acyclic else max_len
    # enumerate words -------------------------------------------------------
    words = [((), x) for x in objects]  # empty word at x, tagged by object
    frontier = [((l,), t) for l, s, t in letters]
    length = 1
    while frontier and length <= bound:
        words.extend(frontier)
        if len(words) > cap:
            raise SizeLimitExceeded("pushout words", cap)
        nxt = []
        if length < bound:
            for w, t in frontier:
                for l in out[t]:
                    nxt.append((w + (l,), ltgt[l]))
        frontier = nxt
        length += 1
    overflow = bool(frontier)

    def key(w, x=None):
        return ("e", x) if not w else w

    index = {}
    for w, t in words:
        k = key(w, t)
        index[k] = len(index)
    uf = list(range(len(index)))

    def ufind(i):
        while uf[i] != i:
            uf[i] = uf[uf[i]]
            i = uf[i]
        return i

    def union(a, b):
        a, b = ufind(a), ufind(b)
        if a != b:
            uf[max(a, b)] = min(a, b)

    swap = {}
    for m in C0.non_identities():
        a, b = (1, u1.mor[m]), (2, u2.mor[m])
        swap.setdefault(a, set()).add(b)
        swap.setdefault(b, set()).add(a)

    def wsrc(w):
        return lsrc[w[0]]

    for w, t in words:
        if not w:
            continue
        k = index[key(w)]
        for p in range(len(w)):
            i, m = w[p]
            C = cats[i]
            # same-piece composition with the next letter
            if p + 1 < len(w) and w[p + 1][0] == i:
                c = C.compose(m, w[p + 1][1])
                rest = w[:p] + (() if C.is_identity(c) else ((i, c),)) + w[p + 2:]
                union(k, index[key(rest, wsrc(w) if not rest else None)])
            # trade across the common part; identities vanish
            for other in swap.get((i, m), ()):
                j, n = other
                if cats[j].is_identity(n):
                    rest = w[:p] + w[p + 1:]
                    rk = key(rest, wsrc(w) if not rest else None)
                else:
                    rk = key(w[:p] + (other,) + w[p + 1:])
                if rk in index:
                    union(k, index[rk])
    if overflow:
        half = bound // 2
        short = {ufind(index[key(v, tv)]) for v, tv in words if len(v) <= half}
        for w, t in words:
            if len(w) > half and ufind(index[key(w, t)]) not in short:
                raise SizeLimitExceeded("pushout word saturation", max_len)
        keep_len = half
    else:
        keep_len = bound
    # classes ---------------------------------------------------------------
    rep = {}
    weight = {}
    members = {}
    for w, t in words:
        r = ufind(index[key(w, t)])
        s = wsrc(w) if w else t
        total = Fraction(0)
        for l in w:
            total = total + lw[l]
        members.setdefault(r, []).append(w)
        if r not in weight or total < weight[r]:
            weight[r] = total
        if len(w) <= keep_len:
            cur = rep.get(r)
            if cur is None or (len(w), repr(w)) < (len(cur[0]), repr(cur[0])):
                rep[r] = (w, s, t)
    mors = {}
    ids = {}
    mname = {}
    for r, (w, s, t) in sorted(rep.items(), key=lambda kv: (len(kv[1][0]), repr(kv[1][0]))):
        name = ("id", s) if not w else w
        mname[r] = name
        mors[name] = (s, t)
        if not w:
            ids[s] = name
    for x in objects:
        r = ufind(index[key((), x)])
        ids[x] = mname[r]
    comp = {}
    for ra, (wa, sa, ta) in rep.items():
        for rb, (wb, sb, tb) in rep.items():
            if ta != sb:
                continue
            cat = wa + wb
            k = key(cat, ta if not cat else None)
            if k not in index:
                raise SizeLimitExceeded("pushout composite", max_len)
            comp[(mname[ra], mname[rb])] = mname[ufind(index[k])]
    P = FiniteWeightedCategory(objects, mors, ids, comp, {mname[r]: weight[r] for r in rep})

    def injection(i):
        C = cats[i]
        mor = {}
        for m in C.morphisms:
            if C.is_identity(m):
                mor[m] = ids[obj_of[(i, C.src(m))]]
            else:
                mor[m] = mname[ufind(index[key(((i, m),))])]
        return WFunctor(C, P, {x: obj_of[(i, x)] for x in C.objects}, mor)

    return Pushout(P, injection(1), injection(2),
                   {mname[r]: members[r] for r in rep})


def mediating_functor(po: Pushout, g1: WFunctor, g2: WFunctor) -> WFunctor:
    """The functor out of the pushout induced by a cocone ``(g1, g2)``."""
    P = po.category
    T = g1.target
    obj = {}
    for x in g1.source.objects:
        obj[po.v1.obj[x]] = g1.obj[x]
    for x in g2.source.objects:
        obj[po.v2.obj[x]] = g2.obj[x]
    legs = {1: g1, 2: g2}
    mor = {}
    for m, (s, t) in P.morphisms.items():
        w = po.words[m][0]
        cur = T.identities[obj[s]]
        for i, n in w:
            cur = T.compose(cur, legs[i].mor[n])
        mor[m] = cur
    return WFunctor(P, T, obj, mor)


# isomorphism and monoids -------------------------------------------------------

def find_isomorphism(A: FiniteWeightedCategory, B: FiniteWeightedCategory,
                     obj_map: dict | None = None, weights: bool = True) -> WFunctor | None:
    """An isomorphism ``A -> B`` (weight-preserving when ``weights``), or None."""
    if len(A.objects) != len(B.objects) or len(A.morphisms) != len(B.morphisms):
        return None
    for F in enumerate_functors(A, B, obj_map=obj_map):
        if len(set(F.obj.values())) != len(A.objects):
            continue
        if len(set(F.mor.values())) != len(A.morphisms):
            continue
        if weights and any(A.w(m) != B.w(F.mor[m]) for m in A.morphisms):
            continue
        return F
    return None


def homotopy_monoid(C: FiniteWeightedCategory, x) -> FiniteWeightedCategory:
    """Weighted monoid of endomorphisms of ``x``, as a one-object category."""
    if x not in C.identities:
        raise UnknownObject(x)
    return full_subcategory(C, [x])


def pointed_invariance(phi: WNatTrans, x) -> bool:
    """If ``phi`` is trivial at ``x``, both functors agree on endomorphisms of ``x``."""
    F, G = phi.source, phi.target
    Y = F.target
    if not Y.is_identity(phi.components[x]):
        raise ValueError("transformation is not pointed at x")
    return all(F.mor[a] == G.mor[a] for a in F.source.hom(x, x))
