"""Exit criteria of the build, one test per criterion.

Each test records a single ``PASS``/``FAIL`` line (shown in the terminal
summary, or printed directly when this file is run as a script).
"""
import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import conftest  # noqa: E402
from conftest import random_space  # noqa: E402
from test_paths import random_pl, random_rho  # noqa: E402
from test_wcat import exponential_law_ok, random_wcat  # noqa: E402
from test_dmetric import exponential_law_holds  # noqa: E402
from test_wspace import axes, random_chain_space  # noqa: E402

from wtopo import dmetric, fundcat, paths, rotation, wcat, wspace  # noqa: E402
from wtopo.paths import ChainPath, constant, length, lipschitz_weight_of_path, span  # noqa: E402
from wtopo.weights import INF, scale as wscale  # noqa: E402

pytestmark = pytest.mark.acceptance

F = Fraction
R2 = rotation.sqrt(2)


def report(n: int, checks: dict, started: float, note: str = ""):
    """Record one line for criterion ``n`` and fail unless every check holds."""
    ok = all(checks.values())
    parts = [f"{k} {'ok' if v else 'FAILS'}" for k, v in checks.items()]
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: " + "; ".join(parts)
    line += f" ({time.perf_counter() - started:.2f}s)"
    if note:
        line += f" [{note}]"
    conftest.ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def test_criterion_1_annulus_category():
    t0 = time.perf_counter()
    C = fundcat.fundamental_category(fundcat.square_annulus())
    gens = fundcat.generating_arrows(C)
    sizes = fundcat.hom_sizes(C)
    others = {k: n for k, n in sizes.items() if k not in (("0", "1"), ("p", "q"))}
    big = sorted(f"hom({x},{y})={n}" for (x, y), n in others.items() if n > 1)
    elapsed = time.perf_counter() - t0
    report(1, {
        "4 generators of weight 2/3": len(gens) == 4 and all(C.w(g) == F(2, 3) for g in gens),
        "hom(0,1) = 2 arrows of weight 2": sizes[("0", "1")] == 2
        and all(C.w(m) == 2 for m in C.hom("0", "1")),
        "hom(p,q) = 2": sizes[("p", "q")] == 2,
        "all other hom-sets <= 1": not big,
        "runtime < 5s": elapsed < 5,
    }, t0, note=", ".join(big))


def test_criterion_2_spectra():
    t0 = time.perf_counter()
    C = fundcat.fundamental_category(fundcat.square_annulus())
    fut, past = wcat.future_spectrum(C), wcat.past_spectrum(C)
    # every subset tried; the spectrum is the unique smallest with a valid reflection
    admissible = []
    for k in range(1, len(C.objects) + 1):
        for sub in itertools.combinations(C.objects, k):
            for R in wcat.reflections(C, sub):
                if R.reflector_weight is INF or R.unit_weight is INF:
                    continue
                if wcat.check_future_equivalence(*R.as_equivalence(C)).valid:
                    admissible.append(sub)
                    break
    least = min(len(s) for s in admissible)
    smallest = [s for s in admissible if len(s) == least]
    report(2, {
        "future spectrum {p, 1}": fut.objects == ("p", "1") and not fut.multiple,
        "past spectrum {0, q}": past.objects == ("0", "q") and not past.multiple,
        "exhaustive search agrees": smallest == [("p", "1")],
        "runtime < 30s": time.perf_counter() - t0 < 30,
    }, t0)


def test_criterion_3_van_kampen():
    t0 = time.perf_counter()
    checks = {"annulus": fundcat.van_kampen_check(fundcat.square_annulus(),
                                                  pieces=fundcat.annulus_pieces()).ok}
    rng = random.Random(2024)
    for k in range(5):
        plane, cut = fundcat.random_plane(rng, 1 + k % 2)
        rep = fundcat.van_kampen_check(plane, cut=cut)
        checks[f"random plane {k + 1} ({len(plane.holes)} holes)"] = rep.isomorphic and rep.weights_equal
    report(3, checks, t0)


def _chain_ok(factors) -> bool:
    n = len(factors)
    sym = [dmetric.symmetrize(X) for X in factors]
    p_sym = dmetric.product(sym)
    sym_p = dmetric.symmetrize(dmetric.product(factors))
    sym_t = dmetric.symmetrize(dmetric.tensor(factors))
    t_sym = dmetric.tensor(sym)
    return (dmetric.entrywise_leq(p_sym, sym_p) and dmetric.entrywise_leq(sym_p, sym_t)
            and sym_t.d == t_sym.d and dmetric.entrywise_leq(t_sym, dmetric.scale(p_sym, n)))


def test_criterion_4_symmetrization_chain():
    t0 = time.perf_counter()
    rng = random.Random(4)
    bad = 0
    for trial in range(100):
        k = 2 if trial < 50 else 3
        if not _chain_ok([random_space(rng, 4) for _ in range(k)]):
            bad += 1
    report(4, {"100 trials (50 pairs, 50 triples), zero violations": bad == 0}, t0)


def _path_properties(rng) -> bool:
    dim = rng.choice([1, 1, 2, 3])
    kind = rng.choice(["delta_line", "delta_interval"])
    a = random_pl(rng, dim, kind=kind)
    sp, L, lip = span(a), length(a), lipschitz_weight_of_path(a)
    c = constant(a.model, a.values[0])
    ok = span(c) == 0 == length(c)                                     # (a)
    ok &= sp <= L <= lip                                               # (f)
    incs = a.increments()
    if all(x >= 0 for inc in incs for x in inc):                       # (i)
        disp = sum((e - s for s, e in zip(a.model.coords(a.values[0]), a.model.coords(a.values[-1]))), F(0))
        ok &= L == sp == disp
    else:
        ok &= L is INF and sp is INF
    if kind == "delta_line":                                           # (b), (h)
        b = random_pl(rng, dim)
        shift = [x - y for x, y in zip(a.model.coords(a.values[-1]), b.model.coords(b.values[0]))]
        vals = [tuple(x + s for x, s in zip(b.model.coords(v), shift)) for v in b.values]
        b = paths.PLPath(b.model, b.times, tuple(v[0] if dim == 1 else v for v in vals))
        ab = paths.concatenate(a, b)
        ok &= length(ab) == L + length(b) and span(ab) <= sp + span(b)
        ok &= lipschitz_weight_of_path(ab) <= 2 * max(lip, lipschitz_weight_of_path(b))
        lam = F(rng.randint(0, 8), 4)
        fa = paths.scale_values(a, lam)
        ok &= span(fa) <= wscale(lam, sp) and length(fa) <= wscale(lam, L)
    ar = paths.reparametrize(a, random_rho(rng))                       # (c)
    ok &= span(ar) <= sp and length(ar) <= L
    ah = paths.reparametrize(a, random_rho(rng, strict=True))          # (d)
    ok &= span(ah) == sp and length(ah) == L
    if kind == "delta_line":                                           # (e)
        c = random_pl(rng, rng.choice([1, 2]))
        pair = paths.tensor_pair(a, c)
        ok &= length(pair) == L + length(c) and span(pair) == sp + span(c)
    return bool(ok)


def _chain_properties(rng) -> bool:
    X = random_space(rng, rng.randint(1, 4))
    u = ChainPath(X, tuple(rng.choice(X.points) for _ in range(rng.randint(1, 4))))
    v = ChainPath(X, (u.vertices[-1],) + tuple(rng.choice(X.points) for _ in range(rng.randint(0, 3))))
    uv = u.concat(v)
    return (span(u) <= length(u) and length(uv) == length(u) + length(v)
            and span(uv) <= span(u) + span(v) and span(ChainPath(X, u.vertices[:1])) == 0)


def test_criterion_5_path_properties():
    t0 = time.perf_counter()
    rng = random.Random(5)
    failures = sum(not (_path_properties(rng) if k % 4 else _chain_properties(rng)) for k in range(200))
    a = paths.sqrt_approximant(101)
    report(5, {
        "200 random PL/chain paths": failures == 0,
        "sqrt approximant L = 1": length(a) == 1,
        "sqrt approximant ||a|| > 100": lipschitz_weight_of_path(a) > 100,
    }, t0)


def test_criterion_6_exponential_law():
    t0 = time.perf_counter()
    rng = random.Random(6)
    spaces_ok = all(exponential_law_holds(*(random_space(rng, rng.randint(1, 3)) for _ in range(3)))
                    for _ in range(30))
    cats_ok = all(exponential_law_ok(random_wcat(rng), random_wcat(rng), random_wcat(rng))
                  for _ in range(30))
    report(6, {"30 delta-space triples": spaces_ok, "30 category triples": cats_ok}, t0)


def test_criterion_7_galois():
    t0 = time.perf_counter()
    rng = random.Random(7)
    bad = 0
    for _ in range(100):
        X = random_chain_space(rng)
        unit = wspace.galois_check(X, 3)
        counit = wspace.galois_check_dual(wspace.delta_of(X), X.edges, 3)
        bad += not (unit.ok and counit.ok)
    Y, adm = axes()
    flags = wspace.classify(Y, adm)
    report(7, {
        "100 random chain w-spaces": bad == 0,
        "axes dY(y,y') = 1": Y.dist("y", "y'") == 1,
        "axes d(LY)(y,y') = 2": wspace.delta_of(wspace.L_of(Y, adm)).dist("y", "y'") == 2,
        "axes geodetic, not linearly": flags.geodetic is True and flags.linearly_geodetic is False,
    }, t0)


def test_criterion_8_rotation_monoid():
    t0 = time.perf_counter()
    degree = rotation.DEFAULT_DEGREE
    M = rotation.fundamental_monoid(R2, 1, degree)
    first = M.weights()[:10]
    brute = sorted(m + n * R2 for m in range(-256, 257) for n in range(-degree, degree + 1)
                   if m + n * R2 >= 0)[:10]
    report(8, {
        "first 10 weights match brute force": len(first) == 10 and first == brute,
        "weight injective": M.injective(),
        "strictly additive on all pairs": M.additivity_violations() == [],
    }, t0, note=f"{len(M.elements)} classes, winding degree <= {degree}")


def test_criterion_9_rotation_table():
    t0 = time.perf_counter()
    phi = (1 + rotation.sqrt(5)) / 2
    table = [(R2, 1 + R2, True, True), (phi, 1 / phi, True, True), (R2, R2 / 2, False, True),
             (R2, rotation.sqrt(3), False, False), (R2, (2 + R2) / 2, False, True)]
    checks = {}
    for a, b, iso, lip in table:
        vi, vl = rotation.classify_isometric(a, b), rotation.classify_lipschitz(a, b)
        good = vi.holds is iso and vl.holds is lip
        if lip:
            good &= rotation.apply_word(vl.certificate, a) == b
        checks[f"({a}, {b})"] = bool(good)
    checks["runtime < 5s"] = time.perf_counter() - t0 < 5
    report(9, checks, t0)


def _fuzz_one(rng, k) -> list:
    """Build a few values from random inputs; return the names that fail validation."""
    bad = []
    kind = k % 4
    if kind == 0:
        X, Y = random_space(rng, rng.randint(1, 3)), random_space(rng, rng.randint(1, 3))
        made = {"product": dmetric.product([X, Y]), "tensor": dmetric.tensor([X, Y]),
                "sum": dmetric.sum([X, Y]), "symmetrize": dmetric.symmetrize(X),
                "opposite": dmetric.opposite(X), "scale": dmetric.scale(X, F(rng.randint(0, 6), 3)),
                "subspace": dmetric.subspace(X, X.points[:rng.randint(1, len(X))]),
                "quotient": dmetric.quotient(X, [tuple(rng.choice(X.points) for _ in range(2))])[0],
                "internal_hom": dmetric.internal_hom(X, Y)}
        bad += [n for n, Z in made.items() if not dmetric.is_valid(Z)]
    elif kind == 1:
        X, Y = random_wcat(rng, 2, 4), random_wcat(rng, 2, 4)
        made = {"tensor_wcat": wcat.tensor_wcat(X, Y), "opposite_wcat": wcat.opposite_wcat(X),
                "scale_wcat": wcat.scale_wcat(X, F(rng.randint(0, 4), 2)),
                "full_subcategory": wcat.full_subcategory(X, X.objects[:1]),
                "hom_wcat": wcat.hom_wcat(X, Y), "thin": wcat.thin_category(random_space(rng, 3))}
        for n, C in made.items():
            try:
                wcat.validate_wcat(C)
            except Exception:
                bad.append(n)
    elif kind == 2:
        X, Y = random_chain_space(rng, n_vertices=2), random_chain_space(rng, n_vertices=2)
        D = wspace.delta_of(X)
        made = {"product": wspace.product([X, Y]), "tensor": wspace.tensor([X, Y]),
                "sum": wspace.sum([X, Y]), "quotient": wspace.quotient(X, [tuple(X.vertices)]),
                "opposite": wspace.opposite(X), "linearize": wspace.linearize(X),
                "sp_of": wspace.sp_of(D, X.edges), "L_of": wspace.L_of(D, X.edges)}
        bad += [n for n, W in made.items() if wspace.axiom_violation(W, 3) is not None]
        if not dmetric.is_valid(D):
            bad.append("delta_of")
    else:
        if k % 20 == 3:
            plane, _ = fundcat.random_plane(rng, rng.randint(1, 2))
            try:
                wcat.validate_wcat(fundcat.fundamental_category(plane))
            except Exception:
                bad.append("fundamental_category")
        else:
            a = random_pl(rng, rng.choice([1, 2]))
            if not span(a) <= length(a) <= lipschitz_weight_of_path(a):
                bad.append("path")
    return bad


def test_criterion_10_fuzz():
    t0 = time.perf_counter()
    rng = random.Random(10)
    failures = []
    for k in range(500):
        failures += _fuzz_one(rng, k)
    report(10, {"500 fuzz inputs, zero axiom violations": not failures}, t0,
           note=", ".join(sorted(set(failures))))


if __name__ == "__main__":
    failed = 0
    tests = [fn for name, fn in globals().items() if name.startswith("test_criterion_")]
    for fn in sorted(tests, key=lambda f: int(f.__name__.split("_")[2])):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
