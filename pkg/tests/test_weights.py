from fractions import Fraction

import pytest
from hypothesis import given

from wtopo.weights import INF, ext, fmt, hom_plus, ratio, scale, wsum

from conftest import weights


def test_hom_plus_examples():
    assert hom_plus(ext(2), ext(5)) == 3
    assert hom_plus(ext(5), ext(2)) == 0
    assert hom_plus(ext(3), INF) is INF
    assert hom_plus(INF, INF) == 0
    assert hom_plus(INF, ext(7)) == 0


@given(weights, weights, weights)
def test_hom_plus_is_right_adjoint(lam, mu, nu):
    # lam + mu >= nu  iff  lam >= hom(mu, nu)
    assert (lam + mu >= nu) == (lam >= hom_plus(mu, nu))


@given(weights, weights)
def test_order_and_addition(a, b):
    assert a + b >= a and a + b >= b
    assert (a <= b) or (b <= a)
    assert a + INF is INF and INF + a is INF


def test_infinity_conventions():
    assert scale(0, INF) is INF
    assert 0 * INF is INF
    assert wsum([Fraction(1), INF, Fraction(2)]) is INF
    assert ratio(ext(3), ext(0)) is INF
    assert ratio(ext(0), ext(0)) == 0
    assert ratio(ext(2), INF) == 0
    with pytest.raises(ArithmeticError):
        INF - INF


@pytest.mark.parametrize("raw, want", [("2/3", Fraction(2, 3)), ("inf", INF), (4, Fraction(4)),
                                       ("∞", INF), (Fraction(1, 5), Fraction(1, 5))])
def test_ext_parses(raw, want):
    assert ext(raw) == want


@pytest.mark.parametrize("raw", [0.5, "0.5", "1e3", -1, "-2/3", True])
def test_ext_rejects(raw):
    with pytest.raises((ValueError, TypeError)):
        ext(raw)


@given(weights)
def test_fmt_round_trip(x):
    assert ext(fmt(x)) == x
