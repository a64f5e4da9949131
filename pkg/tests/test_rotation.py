import itertools
import random
import time
from fractions import Fraction

import pytest

from wtopo import rotation
from wtopo.errors import IncompatibleField, NotUnimodular, ValidationError
from wtopo.rotation import (GElement, ProjectedPath, QuadNumber, QuadraticIrrational, apply_word,
                            cf_expansion, cf_value, classify_isometric, classify_lipschitz,
                            enumerate_g_plus, fundamental_monoid, g_member, g_weight, gl2z_apply,
                            lift_path, sqrt)
from wtopo.weights import INF

F = Fraction
R2, R3, R5 = sqrt(2), sqrt(3), sqrt(5)
PHI = (1 + R5) / 2


def brute_g_plus(theta, bound, degree, count):
    vals = sorted((m + n * theta, m, n) for m in range(-bound, bound + 1)
                  for n in range(-degree, degree + 1) if m + n * theta >= 0)
    return [GElement(m, n) for _, m, n in vals[:count]]


def random_quad(rng, d=None):
    d = d or rng.choice([2, 3, 5, 6, 7])
    q = rng.choice([-3, -2, -1, 1, 2, 3])
    return QuadraticIrrational(rng.randint(-6, 6), q, rng.randint(1, 4), d)


def bfs_reaches(theta, target, max_len):
    frontier = {theta}
    seen = {theta}
    for _ in range(max_len):
        nxt = set()
        for v in frontier:
            for letter in ("T", "T^-1", "R"):
                w = apply_word((letter,), v)
                if w == target:
                    return True
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt
    return theta == target


# arithmetic -----------------------------------------------------------------------

def test_arithmetic_examples():
    assert R2 + 1 == QuadraticIrrational(1, 1, 1, 2)
    assert 1 / R2 == QuadraticIrrational(0, 1, 2, 2)
    assert R2 < F(3, 2) and not F(3, 2) < R2
    assert R2 * R2 == 2 and (R2 * R2).is_rational
    assert QuadraticIrrational(2, 2, 2, 2) == 1 + R2
    x = QuadraticIrrational(-4, 6, 4, 2)
    assert (x.p, x.q, x.r) == (-2, 3, 2)
    with pytest.raises(IncompatibleField):
        R2 + R3
    with pytest.raises(ValidationError):
        QuadraticIrrational(1, 1, 1, 4)
    with pytest.raises(ZeroDivisionError):
        R2 / QuadNumber(0)


def test_parse_round_trip():
    rng = random.Random(1)
    for _ in range(100):
        x = random_quad(rng)
        assert rotation.parse_quad(x.to_json()) == x
        assert rotation.parse_quad(x.to_dict()) == x


def test_order_agrees_with_floats():
    rng = random.Random(2)
    for _ in range(300):
        d = rng.choice([2, 3, 5])
        x, y = random_quad(rng, d), random_quad(rng, d)
        if abs(float(x) - float(y)) > 1e-9:
            assert (x < y) == (float(x) < float(y))
        assert x.floor() == int(float(x) // 1)


# G and its positive part ------------------------------------------------------------

def test_g_weight_examples():
    assert g_weight(GElement(1, 0), R2) == 1
    assert g_weight(GElement(-1, 1), R2) == R2 - 1
    assert g_weight(GElement(1, -1), R2) is INF


def test_enumerate_small_examples():
    assert enumerate_g_plus(R2, 1) == [GElement(0, 0)]
    assert enumerate_g_plus(R3, 1) == [GElement(0, 0)]
    first = enumerate_g_plus(R2, 5, degree=4)
    assert [g.value(R2) for g in first] == [0, 3 - 2 * R2, 3 * R2 - 4, 6 - 4 * R2, R2 - 1]


def test_listed_small_weights_are_in_g_plus():
    # 0, r, 2r, 1, 3r with r = sqrt2 - 1 are all positive elements, but
    # the group has others in between, such as 3 sqrt2 - 4 and 2 - sqrt2
    listed = [QuadNumber(0), R2 - 1, 2 * R2 - 2, QuadNumber(1), 3 * R2 - 3]
    all_small = [g.value(R2) for g in enumerate_g_plus(R2, 40, degree=4)]
    for x in listed:
        assert g_member(x, R2) is not None and x >= 0
        assert x in all_small
    assert all_small.index(3 * R2 - 4) < all_small.index(R2 - 1)
    assert all_small.index(2 - R2) < all_small.index(QuadNumber(1))


@pytest.mark.parametrize("theta", [R2, R3, PHI, (R5 - 1) / 3])
@pytest.mark.parametrize("degree", [1, 3, 4])
def test_enumerate_matches_brute_force(theta, degree):
    got = enumerate_g_plus(theta, 30, degree=degree)
    assert got == brute_g_plus(theta, 64, degree, 30) == brute_g_plus(theta, 256, degree, 30)
    ws = [g.value(theta) for g in got]
    assert ws[0] == 0 and all(a < b for a, b in zip(ws, ws[1:]))


def test_enumeration_closed_under_sums():
    got = enumerate_g_plus(R2, 25, degree=2)
    longer = enumerate_g_plus(R2, 200, degree=4)
    top, top_longer = got[-1].value(R2), longer[-1].value(R2)
    for g, h in itertools.product(got, repeat=2):
        s = g + h
        if s.value(R2) <= top and abs(s.n) <= 2:
            assert s in got
        if s.value(R2) <= top_longer and abs(s.n) <= 4:
            assert s in longer


def test_g_plus_upto_matches_enumeration():
    cap = F(5, 2)
    listed = rotation.g_plus_upto(R2, cap, degree=3)
    n = len(listed)
    assert listed == enumerate_g_plus(R2, n, degree=3)
    assert enumerate_g_plus(R2, n + 1, degree=3)[-1].value(R2) > cap


# path lifting and the fundamental monoid ------------------------------------------------

def test_lift_examples():
    lift = lift_path(ProjectedPath(R2, (F(3, 5), F(9, 10))))
    assert lift.endpoint == F(3, 2) and lift.weight == F(3, 2)
    assert not lift.loop
    lift = lift_path(ProjectedPath(R2, (R2 - F(5, 4), F(1, 4))))
    assert lift.loop and lift.element == GElement(-1, 1) and lift.weight == R2 - 1
    lift = lift_path(ProjectedPath(R2, ()))
    assert lift.loop and lift.weight == 0 and lift.element == GElement(0, 0)
    lift = lift_path(ProjectedPath(R2, (F(1, 2),)), x=R2)
    assert lift.endpoint == R2 + F(1, 2)
    with pytest.raises(ValidationError):
        ProjectedPath(R2, (F(-1, 2),))
    with pytest.raises(IncompatibleField):
        ProjectedPath(R2, (R3,))


def test_lift_is_additive():
    rng = random.Random(3)
    for _ in range(100):
        segs = [GElement(rng.randint(0, 3), 0) if rng.random() < 0.3 else F(rng.randint(0, 9), 4)
                for _ in range(rng.randint(0, 5))]
        k = rng.randint(0, len(segs))
        a, b = ProjectedPath(R2, tuple(segs[:k])), ProjectedPath(R2, tuple(segs[k:]))
        ab = ProjectedPath(R2, tuple(segs))
        assert lift_path(ab).weight == lift_path(a).weight + lift_path(b).weight


def test_fundamental_monoid_examples():
    M = fundamental_monoid(R2, F(3, 2), degree=3)
    assert M.weights() == sorted(M.weights())
    for x in (0, R2 - 1, 2 * R2 - 2, 1, 3 * R2 - 3, R2):
        assert x in M.weights()
    assert all(0 <= w <= F(3, 2) for w in M.weights())
    assert M.injective() and M.additivity_violations() == []
    assert fundamental_monoid(R2, 0).elements == (GElement(0, 0),)


@pytest.mark.parametrize("theta", [R2, PHI, R3 / 2])
def test_monoid_injective_and_additive(theta):
    M = fundamental_monoid(theta, 3, degree=4)
    assert len(M.elements) > 20
    assert M.injective()
    assert M.additivity_violations() == []


def test_scaling_by_theta_for_the_inverse():
    theta = R2
    inv = 1 / theta
    for g in enumerate_g_plus(theta, 20):
        x = g.value(theta) / abs(theta)
        h = g_member(x, inv)
        assert h is not None and g_weight(h, inv) == x
        assert h == GElement(g.n, g.m)


# classification ---------------------------------------------------------------------

def test_isometric_examples():
    assert classify_isometric(R2, 1 + R2).certificate == ("+", 1)
    v = classify_isometric(PHI, 1 / PHI)
    assert v.holds and v.certificate == ("+", -1)
    assert not classify_isometric(R2, R2 / 2).holds
    assert classify_isometric(R2, 3 - R2).certificate == ("-", 3)
    assert not classify_isometric(R2, R3).holds


def test_cf_examples():
    assert cf_expansion(R2) == ([1], [2])
    assert cf_expansion(1 + R2) == ([], [2])
    assert cf_expansion(PHI) == ([], [1])
    assert cf_expansion(R3) == ([1], [1, 2])
    assert cf_value([1], [2]) == R2


def test_cf_round_trip_and_convergents():
    rng = random.Random(4)
    for _ in range(100):
        x = random_quad(rng)
        pre, per = cf_expansion(x)
        assert cf_value(pre, per) == x
        terms = (pre + per * 6)[:8]
        assert terms[0] == x.floor()
        h0, h1, k0, k1 = 1, terms[0], 0, 1
        for t in terms[1:]:
            h0, h1, k0, k1 = h1, t * h1 + h0, k1, t * k1 + k0
            assert abs(float(x) - h1 / k1) <= 1 / k1 ** 2 + 1e-12


VERDICTS = [
    (R2, 1 + R2, True, True),
    (PHI, 1 / PHI, True, True),
    (R2, R2 / 2, False, True),
    (R2, R3, False, False),
    (R2, (2 + R2) / 2, False, True),
]


@pytest.mark.parametrize("theta, theta2, iso, lip", VERDICTS)
def test_verdict_table(theta, theta2, iso, lip):
    assert classify_isometric(theta, theta2).holds is iso
    v = classify_lipschitz(theta, theta2)
    assert v.holds is lip
    if lip:
        assert apply_word(v.certificate, theta) == theta2
        assert set(v.certificate) <= set(rotation.LETTERS)


def test_half_shift_needs_both_moves():
    word = classify_lipschitz(R2, 1 + R2 / 2).certificate
    assert "R" in word and any(x.startswith("T") for x in word)


def test_isometric_implies_lipschitz():
    rng = random.Random(5)
    checked = 0
    for _ in range(80):
        x = random_quad(rng)
        k = rng.randint(-4, 4)
        y = k + x if rng.random() < 0.5 else k - x
        if rng.random() < 0.3:
            y = random_quad(rng, x.d)
        if classify_isometric(x, y).holds:
            v = classify_lipschitz(x, y)
            assert v.holds and apply_word(v.certificate, x) == y
            checked += 1
    assert checked >= 50


def test_lipschitz_is_an_equivalence():
    rng = random.Random(6)
    pool = [R2, 1 + R2, R2 / 2, R3, PHI, 1 / PHI, (2 + R2) / 2] + [random_quad(rng, 2) for _ in range(8)]
    table = {(i, j): classify_lipschitz(a, b) for i, a in enumerate(pool) for j, b in enumerate(pool)}
    n = len(pool)
    for i in range(n):
        assert table[(i, i)].holds
        for j in range(n):
            assert table[(i, j)].holds == table[(j, i)].holds
            if table[(i, j)].holds:
                assert apply_word(table[(i, j)].certificate, pool[i]) == pool[j]
            for k in range(n):
                if table[(i, j)].holds and table[(j, k)].holds:
                    assert table[(i, k)].holds


def test_lipschitz_against_word_search():
    rng = random.Random(7)
    for _ in range(40):
        x = random_quad(rng, rng.choice([2, 3]))
        word = [rng.choice(["T", "T^-1", "R"]) for _ in range(rng.randint(0, 6))]
        y = apply_word(word, x)
        v = classify_lipschitz(x, y)
        assert v.holds and apply_word(v.certificate, x) == y
        z = random_quad(rng, x.d)
        if bfs_reaches(x, z, 5):
            assert classify_lipschitz(x, z).holds


def test_verdict_table_is_fast():
    start = time.perf_counter()
    for theta, theta2, _, _ in VERDICTS:
        classify_isometric(theta, theta2)
        classify_lipschitz(theta, theta2)
    assert time.perf_counter() - start < 5


# GL(2, Z) -------------------------------------------------------------------------------

def test_gl2z_examples():
    assert gl2z_apply(((1, 0), (0, 1)), R2) == R2
    assert gl2z_apply(rotation.LETTERS["R"], R2) == R2 / 2
    assert gl2z_apply(rotation.LETTERS["T"], PHI) == PHI + 1
    with pytest.raises(NotUnimodular):
        gl2z_apply(((2, 0), (0, 1)), R2)


def test_word_order():
    # the rightmost letter acts first
    assert apply_word(["R", "T"], R2) == 1 / (R2 + 1)
    assert apply_word(["T", "R"], R2) == 1 / R2 + 1
