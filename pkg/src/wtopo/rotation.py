"""Irrational rotation w-spaces for quadratic irrational parameters.

Numbers live in a real quadratic field ``Q(sqrt d)`` and are stored as
``a + b*sqrt(d)`` with rational ``a, b``; comparisons are exact.  The
translation group is ``G = Z + theta Z`` and an element is a pair ``(m, n)``
standing for ``m + n*theta``.

``G+`` (the nonnegative part) is dense, so it has no "first N elements".
Enumerations here are cut off by winding degree: only ``|n| <= degree`` is
considered, and inside that slice the elements are discrete and can be listed
in increasing order.

Words in ``R`` (``t -> 1/t``), ``T`` (``t -> t + 1``) and ``T^-1`` are read as
compositions: the rightmost letter acts first, so ``["T", "R"]`` sends ``t`` to
``1/t + 1``.
"""
from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IncompatibleField, NotUnimodular, ValidationError
from .weights import INF, _Infinity

DEFAULT_DEGREE = 4


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class QuadNumber:
    """An element ``a + b*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 0):
        a, b = Fraction(a), Fraction(b)
        if b and not _squarefree(d):
            raise ValidationError(f"d = {d} must be a squarefree integer > 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d if b or _squarefree(d) else 0)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNumber is immutable")

    # canonical integer form (p + q sqrt d) / r
    @property
    def r(self) -> int:
        return math.lcm(self.a.denominator, self.b.denominator)

    @property
    def p(self) -> int:
        return int(self.a * self.r)

    @property
    def q(self) -> int:
        return int(self.b * self.r)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: "QuadNumber") -> int:
        if self.b and other.b and self.d != other.d:
            raise IncompatibleField(f"Q(sqrt {self.d}) and Q(sqrt {other.d}) do not mix")
        return self.d if self.b or not other.b and self.d else other.d

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0 or (a > 0) == (b > 0):
            return 1 if b > 0 else -1
        # opposite signs: the larger square wins
        if a * a > b * b * self.d:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def floor(self) -> int:
        # float estimate, then exact correction
        k = math.floor(float(self))
        while QuadNumber(k + 1) <= self:
            k += 1
        while QuadNumber(k) > self:
            k -= 1
        return k

    def ceil(self) -> int:
        return -(-self).floor()

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return QuadNumber(self.a + other.a, self.b + other.b, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return QuadNumber(self.a * other.a + self.b * other.b * d,
                          self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        c = other.conjugate()
        top = self * c
        return QuadNumber(top.a / n, top.b / n, top.d)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    # comparisons
    def _cmp(self, other):
        if isinstance(other, _Infinity):
            return -1
        other = _coerce(other)
        if other is NotImplemented:
            return None
        return (self - other).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.b == 0:
            return f"QuadNumber({self.a})"
        return f"QuadraticIrrational(p={self.p}, q={self.q}, r={self.r}, d={self.d})"

    def to_json(self) -> str:
        """Exact string: ``"3/2"`` or ``"(-1+1√2)/1"``."""
        if self.b == 0:
            a = self.a
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return f"({self.p}{self.q:+d}√{self.d})/{self.r}"

    __str__ = to_json

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "d": self.d}


def _coerce(x):
    if isinstance(x, QuadNumber):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QuadNumber(x)
    return NotImplemented


def QuadraticIrrational(p: int, q: int, r: int, d: int) -> QuadNumber:
    """``(p + q*sqrt d) / r`` with ``q != 0``, ``r != 0`` and ``d`` squarefree."""
    for name, v in (("p", p), ("q", q), ("r", r), ("d", d)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValidationError(f"{name} must be an integer, got {v!r}")
    if q == 0:
        raise ValidationError("q must be nonzero for an irrational number")
    if r == 0:
        raise ValidationError("r must be nonzero")
    if not _squarefree(d):
        raise ValidationError(f"d = {d} must be a squarefree integer > 1")
    return QuadNumber(Fraction(p, r), Fraction(q, r), d)


def sqrt(d: int) -> QuadNumber:
    return QuadraticIrrational(0, 1, 1, d)


def parse_quad(value) -> QuadNumber:
    """Read ``{"p":..,"q":..,"r":..,"d":..}``, ``"(p+q√d)/r"`` or a rational."""
    if isinstance(value, QuadNumber):
        return value
    if isinstance(value, dict):
        try:
            p, q, r, d = (value[k] for k in ("p", "q", "r", "d"))
        except KeyError as exc:
            raise ValidationError(f"missing field {exc.args[0]!r}") from None
        if q == 0:
            return QuadNumber(Fraction(p, r))
        return QuadraticIrrational(p, q, r, d)
    if isinstance(value, str) and "√" in value:
        m = re.fullmatch(r"\s*\(\s*([+-]?\d+)\s*([+-]\s*\d+)\s*√\s*(\d+)\s*\)\s*/\s*(\d+)\s*", value)
        if not m:
            raise ValidationError(f"cannot read quadratic number {value!r}")
        p, q, d, r = int(m[1]), int(m[2].replace(" ", "")), int(m[3]), int(m[4])
        return QuadraticIrrational(p, q, r, d) if q else QuadNumber(Fraction(p, r))
    if isinstance(value, (int, str, Fraction)) and not isinstance(value, bool):
        try:
            return QuadNumber(Fraction(value))
        except ValueError:
            raise ValidationError(f"cannot read number {value!r}") from None
    raise ValidationError(f"cannot read number {value!r}")


def _irrational(theta) -> QuadNumber:
    theta = parse_quad(theta)
    if theta.is_rational:
        raise ValidationError("theta must be irrational")
    return theta


# the group G = Z + theta Z -------------------------------------------------------

@dataclass(frozen=True, order=True)
class GElement:
    m: int
    n: int

    def value(self, theta: QuadNumber) -> QuadNumber:
        return self.m + self.n * theta

    def __add__(self, other: "GElement") -> "GElement":
        return GElement(self.m + other.m, self.n + other.n)

    def __neg__(self) -> "GElement":
        return GElement(-self.m, -self.n)


def g_weight(e: GElement, theta):
    """``m + n*theta`` when nonnegative, otherwise INF."""
    v = e.value(_irrational(theta))
    return v if v >= 0 else INF


def g_member(x, theta):
    """The element ``(m, n)`` with ``x = m + n*theta``, or None."""
    theta = _irrational(theta)
    x = parse_quad(x)
    n = x.b / theta.b
    if n.denominator != 1:
        return None
    m = x.a - n * theta.a
    if m.denominator != 1:
        return None
    return GElement(int(m), int(n))


def enumerate_g_plus(theta, count: int, degree: int = DEFAULT_DEGREE) -> list:
    """The ``count`` smallest elements of ``G+`` with ``|n| <= degree``.

    Each ``n`` contributes the arithmetic progression starting at the least
    ``m`` with ``m + n*theta >= 0``; the progressions are merged with a heap.
    """
    theta = _irrational(theta)
    if count < 0 or degree < 0:
        raise ValidationError("count and degree must be nonnegative")
    heap = []
    for n in range(-degree, degree + 1):
        m = (-n * theta).ceil() if n else 0
        heap.append((m + n * theta, n, m))
    heapq.heapify(heap)
    out = []
    while len(out) < count:
        v, n, m = heapq.heappop(heap)
        out.append(GElement(m, n))
        heapq.heappush(heap, (v + 1, n, m + 1))
    return out


def g_plus_upto(theta, cap, degree: int = DEFAULT_DEGREE) -> list:
    """All elements of ``G+`` with weight ``<= cap`` and ``|n| <= degree``, sorted."""
    theta = _irrational(theta)
    cap = parse_quad(cap)
    out = []
    for n in range(-degree, degree + 1):
        m = (-n * theta).ceil() if n else 0
        while m + n * theta <= cap:
            out.append(GElement(m, n))
            m += 1
    out.sort(key=lambda g: g.value(theta))
    return out


@dataclass(frozen=True)
class ProjectedPath:
    """An increasing path of the rotation space, given by its segment increments."""

    theta: QuadNumber
    segments: tuple

    def __post_init__(self):
        theta = _irrational(self.theta)
        segs = []
        for s in self.segments:
            v = s.value(theta) if isinstance(s, GElement) else parse_quad(s)
            if v < 0:
                raise ValidationError(f"segment increment {v} is negative")
            if not v.is_rational and v.d != theta.d:
                raise IncompatibleField(f"increment {v} is outside Q(sqrt {theta.d})")
            segs.append(v)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "segments", tuple(segs))


@dataclass(frozen=True)
class Lift:
    endpoint: QuadNumber
    weight: QuadNumber
    loop: bool
    element: GElement | None


def lift_path(path: ProjectedPath, x=0) -> Lift:
    """Lift to the line starting at ``x``; the lift's weight is its rise."""
    total = QuadNumber(0)
    for s in path.segments:
        total = total + s
    g = g_member(total, path.theta)
    return Lift(parse_quad(x) + total, total, g is not None, g)


@dataclass(frozen=True)
class WeightedMonoid:
    """Loop classes at a basepoint, cut off by weight and winding degree."""

    theta: QuadNumber
    cap: QuadNumber
    degree: int
    elements: tuple

    def weight(self, g: GElement):
        return g_weight(g, self.theta)

    def weights(self) -> list:
        return [g.value(self.theta) for g in self.elements]

    def add(self, g: GElement, h: GElement) -> GElement:
        return g + h

    def __contains__(self, g) -> bool:
        return g in set(self.elements)

    def injective(self) -> bool:
        ws = self.weights()
        return len(set(ws)) == len(ws)

    def additivity_violations(self) -> list:
        """Pairs whose sum does not weigh the sum of the weights, or falls
        inside the cutoff without being listed."""
        present = set(self.elements)
        bad = []
        for g in self.elements:
            for h in self.elements:
                s = g + h
                ws = self.weight(s)
                if ws != self.weight(g) + self.weight(h):
                    bad.append((g, h))
                elif ws <= self.cap and abs(s.n) <= self.degree and s not in present:
                    bad.append((g, h))
        return bad


def fundamental_monoid(theta, cap, degree: int = DEFAULT_DEGREE) -> WeightedMonoid:
    theta = _irrational(theta)
    cap = parse_quad(cap)
    return WeightedMonoid(theta, cap, degree, tuple(g_plus_upto(theta, cap, degree)))


# classification ------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    holds: bool
    certificate: object = None


def classify_isometric(theta, theta2) -> Verdict:
    """``theta2 = k + theta`` gives ``("+", k)``; ``theta2 = k - theta`` gives ``("-", k)``."""
    theta, theta2 = _irrational(theta), _irrational(theta2)
    if theta.d != theta2.d:
        return Verdict(False)
    diff = theta2 - theta
    if diff.is_rational and diff.a.denominator == 1:
        return Verdict(True, ("+", int(diff.a)))
    tot = theta2 + theta
    if tot.is_rational and tot.a.denominator == 1:
        return Verdict(True, ("-", int(tot.a)))
    return Verdict(False)


def _pqd_form(theta: QuadNumber):
    # theta = (P + sqrt D) / Q with Q dividing D - P^2
    p, q, r, d = theta.p, theta.q, theta.r, theta.d
    D = q * q * d * r * r
    if q > 0:
        return p * r, r * r, D
    return -p * r, -r * r, D


def _complete_quotients(theta: QuadNumber):
    """Yield ``(a_k, (P_k, Q_k))`` for the regular continued fraction."""
    P, Q, D = _pqd_form(theta)
    s = math.isqrt(D)
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = (-P - s - 1) // (-Q)
        yield a, (P, Q)
        P = a * Q - P
        Q = (D - P * P) // Q


def cf_expansion(theta) -> tuple[list, list]:
    """``(preperiod, period)`` of the continued fraction, shortest preperiod."""
    theta = _irrational(theta)
    seen = {}
    terms = []
    for a, state in _complete_quotients(theta):
        if state in seen:
            j = seen[state]
            return terms[:j], terms[j:]
        seen[state] = len(terms)
        terms.append(a)


def cf_value(preperiod: Sequence[int], period: Sequence[int]) -> QuadNumber:
    """Rebuild the number from its expansion (the inverse of :func:`cf_expansion`)."""
    if not period:
        raise ValidationError("period must be nonempty")
    # y = [period; y] solves c y^2 + (d - a) y - b = 0 with (a b; c d) the period matrix
    a, b, c, d = 1, 0, 0, 1
    for t in period:
        a, b, c, d = a * t + b, a, c * t + d, c
    A, B, C = c, d - a, -b
    disc = B * B - 4 * A * C
    core, k = disc, 1
    f = 2
    while f * f <= core:
        while core % (f * f) == 0:
            core //= f * f
            k *= f
        f += 1
    y = QuadNumber(Fraction(-B, 2 * A), Fraction(k, 2 * A), core)
    for t in reversed(preperiod):
        y = t + 1 / y
    return y


# GL(2, Z) action ---------------------------------------------------------------

LETTERS = {
    "T": ((1, 1), (0, 1)),
    "T^-1": ((1, -1), (0, 1)),
    "R": ((0, 1), (1, 0)),
}
_INVERSE = {"T": "T^-1", "T^-1": "T", "R": "R"}


def gl2z_apply(matrix, theta) -> QuadNumber:
    """``(a t + b) / (c t + d)`` for an integer matrix of determinant +1 or -1."""
    (a, b), (c, d) = matrix
    det = a * d - b * c
    if det not in (1, -1):
        raise NotUnimodular(det)
    t = _irrational(theta)
    return (a * t + b) / (c * t + d)


def word_matrix(word: Sequence[str]):
    m = ((1, 0), (0, 1))
    for letter in word:
        if letter not in LETTERS:
            raise ValidationError(f"unknown letter {letter!r}")
        (a, b), (c, d) = m
        (e, f), (g, h) = LETTERS[letter]
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    return m


def apply_word(word: Sequence[str], theta) -> QuadNumber:
    return gl2z_apply(word_matrix(word), theta)


def _short_word(theta, target, max_len):
    frontier = [((), theta)]
    for _ in range(max_len):
        nxt = []
        for word, value in frontier:
            for letter in ("T", "T^-1", "R"):
                if word and _INVERSE[letter] == word[0]:
                    continue
                w = (letter,) + word
                v = apply_word((letter,), value)
                if v == target:
                    return list(w)
                nxt.append((w, v))
        frontier = nxt
    return None


def _descent_word(terms: Sequence[int]) -> list:
    # x_{k+1} = R(T^{-a_k}(x_k)), written as a composition
    word = []
    for a in terms:
        step = ["T^-1"] * a if a >= 0 else ["T"] * (-a)
        word = ["R"] + step + word
    return word


def _invert(word: Sequence[str]) -> list:
    return [_INVERSE[x] for x in reversed(word)]


def classify_lipschitz(theta, theta2, search_len: int = 4) -> Verdict:
    """Decide GL(2, Z) equivalence by comparing continued-fraction tails.

    The certificate is a word mapping ``theta`` to ``theta2``; a short one is
    looked for first, otherwise both numbers are reduced to a common purely
    periodic complete quotient.  Every certificate is checked before return.
    """
    theta, theta2 = _irrational(theta), _irrational(theta2)
    if theta.d != theta2.d:
        return Verdict(False)
    pre1, per1 = cf_expansion(theta)
    pre2, per2 = cf_expansion(theta2)
    if len(per1) != len(per2):
        return Verdict(False)
    shift = next((k for k in range(len(per1)) if per1[k:] + per1[:k] == per2), None)
    if shift is None:
        return Verdict(False)
    word = _short_word(theta, theta2, search_len)
    if word is None:
        w1 = _descent_word(pre1 + per1[:shift])
        w2 = _descent_word(pre2)
        word = _invert(w2) + w1
    if apply_word(word, theta) != theta2:
        raise AssertionError(f"certificate {word} does not map {theta} to {theta2}")
    return Verdict(True, word)
