"""Extended nonnegative weights: exact rationals plus a point at infinity.

Finite weights are plain :class:`fractions.Fraction` values.  The single
value :data:`INF` stands for the top of ``[0, inf]``; it absorbs addition and
follows the convention ``lam * inf = inf`` for every ``lam`` (including 0).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Infinity, ())

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("wtopo.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        # lam * inf = inf for all lam, zero included
        return self

    __rmul__ = __mul__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf is undefined; use hom_plus")
        return self


INF = _Infinity()

ExtWeight = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def ext(value) -> ExtWeight:
    """Coerce ints, Fractions, INF and strings like ``"2/3"`` or ``"inf"``."""
    if value is INF:
        return INF
    if isinstance(value, str):
        s = value.strip()
        if s.lower() in ("inf", "infinity", "∞"):
            return INF
        if "." in s or "e" in s.lower():
            raise ValueError(f"weights must be exact rationals, got {value!r}")
        value = Fraction(s)
    elif isinstance(value, bool):
        raise TypeError("booleans are not weights")
    elif isinstance(value, float):
        raise TypeError(f"floats are not exact weights: {value!r}")
    else:
        value = Fraction(value)
    if value < 0:
        raise ValueError(f"weights are nonnegative, got {value}")
    return value


def hom_plus(mu: ExtWeight, nu: ExtWeight) -> ExtWeight:
    """Truncated subtraction ``nu - mu``, the internal hom of ``[0, inf]``.

    Characterised by ``lam + mu >= nu  <=>  lam >= hom_plus(mu, nu)``.
    """
    if mu is INF:
        return Fraction(0)
    if nu is INF:
        return INF
    return max(Fraction(0), nu - mu)


def scale(lam, x: ExtWeight) -> ExtWeight:
    if x is INF or lam is INF:
        return INF
    return lam * x


def ratio(num: ExtWeight, den: ExtWeight) -> ExtWeight:
    """Least ``lam`` with ``num <= lam * den``; INF when none exists."""
    if num == 0:
        return Fraction(0)
    if den is INF:
        return Fraction(0)
    if den == 0 or num is INF:
        return INF
    return num / den


def wsum(values) -> ExtWeight:
    total = Fraction(0)
    for v in values:
        if v is INF:
            return INF
        total += v
    return total


def fmt(x) -> str:
    """Exact string form: ``"inf"``, ``"3"`` or ``"2/3"``."""
    if x is INF:
        return "inf"
    if hasattr(x, "to_json"):
        return x.to_json()
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def approx(x, digits: int = 4) -> str:
    """Decimal rendering for human tables only."""
    if x is INF:
        return "inf"
    return f"{float(x):.{digits}f}"
