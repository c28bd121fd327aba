"""Exact arithmetic in the division ring of rational quaternions.

Elements are immutable.  The rationals (``fractions.Fraction``) form the
center; ``realify_scalar`` gives the left regular representation over the
basis ``(1, i, j, k)``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

from . import _backend as _kb
from .errors import ParseError

RationalLike = Union[int, Fraction]
QuaternionLike = Union["Quaternion", int, Fraction, str]

_UNITS = "ijk"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ParseError(f"not a rational literal: {x!r}") from None
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Quaternion:
    """``a + b i + c j + d k`` with rational ``a, b, c, d``.

    Stored as four integer numerators over one positive denominator, which
    keeps products cheap; the components are exposed as Fractions.
    """

    __slots__ = ("_t",)

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0,
                 c: RationalLike = 0, d: RationalLike = 0):
        fa, fb, fc, fd = (_as_fraction(x) for x in (a, b, c, d))
        den = fa.denominator
        for f in (fb, fc, fd):
            q = f.denominator
            if q != 1:
                den = den * q // gcd(den, q)
        self._t = _kb.qnorm(fa.numerator * (den // fa.denominator),
                          fb.numerator * (den // fb.denominator),
                          fc.numerator * (den // fc.denominator),
                          fd.numerator * (den // fd.denominator), den)

    @classmethod
    def _wrap(cls, t: tuple) -> "Quaternion":
        q = object.__new__(cls)
        q._t = t
        return q

    @classmethod
    def coerce(cls, x: QuaternionLike) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, str):
            return parse_quaternion(x)
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "Quaternion":
        return parse_quaternion(text)

    # components
    @property
    def a(self) -> Fraction:
        return Fraction(self._t[0], self._t[4])

    @property
    def b(self) -> Fraction:
        return Fraction(self._t[1], self._t[4])

    @property
    def c(self) -> Fraction:
        return Fraction(self._t[2], self._t[4])

    @property
    def d(self) -> Fraction:
        return Fraction(self._t[3], self._t[4])

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        e = self._t[4]
        return tuple(Fraction(x, e) for x in self._t[:4])  # type: ignore[return-value]

    # predicates
    def is_zero(self) -> bool:
        t = self._t
        return t[0] == 0 and t[1] == 0 and t[2] == 0 and t[3] == 0

    def is_central(self) -> bool:
        t = self._t
        return t[1] == 0 and t[2] == 0 and t[3] == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic
    def __add__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion._wrap(_kb.qadd(self._t, o._t))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion._wrap(_kb.qsub(self._t, o._t))

    def __rsub__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion._wrap(_kb.qsub(o._t, self._t))

    def __neg__(self):
        a, b, c, d, e = self._t
        return Quaternion._wrap((-a, -b, -c, -d, e))

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion._wrap(_kb.qmul(self._t, other._t))
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion._wrap(_kb.qmul(self._t, o._t))

    def __rmul__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion._wrap(_kb.qmul(o._t, self._t))

    def __truediv__(self, other):
        """Right division: ``x / y == x * y.inverse()``."""
        o = Quaternion.coerce(other)
        return Quaternion._wrap(_kb.qmul(self._t, _kb.qinv(o._t)))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = _kb.ONE
        base = self._t
        while n:
            if n & 1:
                result = _kb.qmul(result, base)
            base = _kb.qmul(base, base)
            n >>= 1
        return Quaternion._wrap(result)

    def inverse(self) -> "Quaternion":
        return Quaternion._wrap(_kb.qinv(self._t))

    def conjugate(self) -> "Quaternion":
        a, b, c, d, e = self._t
        return Quaternion._wrap((a, -b, -c, -d, e))

    def norm(self) -> Fraction:
        """Reduced norm ``a^2 + b^2 + c^2 + d^2``."""
        a, b, c, d, e = self._t
        return Fraction(a * a + b * b + c * c + d * d, e * e)

    # comparison
    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return self._t == other._t
        try:
            return self._t == Quaternion.coerce(other)._t
        except (TypeError, ParseError):
            return NotImplemented

    def __hash__(self):
        t = self._t
        if t[1] == 0 and t[2] == 0 and t[3] == 0:
            return hash(Fraction(t[0], t[4]))
        return hash(t)

    def __str__(self):
        return format_quaternion(self)

    def __repr__(self):
        return f"Quaternion({format_quaternion(self)!r})"


ZERO = Quaternion._wrap(_kb.ZERO)
ONE = Quaternion._wrap(_kb.ONE)
I = Quaternion._wrap((0, 1, 0, 0, 1))
J = Quaternion._wrap((0, 0, 1, 0, 1))
K = Quaternion._wrap((0, 0, 0, 1, 1))
BASIS = (ONE, I, J, K)


def invert(q: QuaternionLike) -> Quaternion:
    """Two-sided inverse ``conj(q) / |q|^2``; raises ZeroDivisionError on 0."""
    return Quaternion.coerce(q).inverse()


def is_central(q: QuaternionLike) -> bool:
    return Quaternion.coerce(q).is_central()


def realify_scalar(q: QuaternionLike) -> tuple[tuple[Fraction, ...], ...]:
    """4x4 rational matrix of ``x -> q x`` in the basis (1, i, j, k)."""
    q = Quaternion.coerce(q)
    cols = [(q * e).components() for e in BASIS]
    return tuple(tuple(cols[c][r] for c in range(4)) for r in range(4))


def realify_right(q: QuaternionLike) -> tuple[tuple[Fraction, ...], ...]:
    """4x4 rational matrix of ``x -> x q`` in the basis (1, i, j, k)."""
    q = Quaternion.coerce(q)
    cols = [(e * q).components() for e in BASIS]
    return tuple(tuple(cols[c][r] for c in range(4)) for r in range(4))


# -- literal grammar ---------------------------------------------------------
#   rational := ["-"] digits ["/" digits]
#   term     := rational [unit] | ["-"|"+"] unit
#   literal  := term { ("+"|"-") term }          (whitespace ignored)

def parse_quaternion(text: str) -> Quaternion:
    if not isinstance(text, str):
        raise ParseError(f"quaternion literal must be a string, got {type(text).__name__}")
    chars = [(ch, pos) for pos, ch in enumerate(text) if not ch.isspace()]
    if not chars:
        raise ParseError("empty quaternion literal", text, 0)
    parser = _LiteralParser(text, chars)
    return parser.literal()


class _LiteralParser:
    def __init__(self, text, chars):
        self.text = text
        self.chars = chars
        self.i = 0

    def _peek(self):
        return self.chars[self.i][0] if self.i < len(self.chars) else None

    def _pos(self):
        return self.chars[self.i][1] if self.i < len(self.chars) else len(self.text)

    def _fail(self, message):
        raise ParseError(message, self.text, self._pos())

    def literal(self) -> Quaternion:
        comps = [Fraction(0)] * 4
        self._term(comps, 1)
        while self.i < len(self.chars):
            ch = self._peek()
            if ch not in "+-":
                self._fail(f"unexpected character {ch!r}")
            self.i += 1
            self._term(comps, 1 if ch == "+" else -1)
        return Quaternion(*comps)

    def _digits(self) -> int:
        start = self.i
        while self.i < len(self.chars) and self.chars[self.i][0].isdigit():
            self.i += 1
        if self.i == start:
            self._fail("expected digits")
        return int("".join(ch for ch, _ in self.chars[start:self.i]))

    def _term(self, comps, sign):
        ch = self._peek()
        if ch is None:
            self._fail("expected a term")
        if ch in "+-":
            nxt = self.chars[self.i + 1][0] if self.i + 1 < len(self.chars) else None
            if nxt in tuple(_UNITS):
                self.i += 2
                comps[1 + _UNITS.index(nxt)] += sign * (1 if ch == "+" else -1)
                return
            if ch == "+":
                self._fail("'+' may only precede a unit")
            self.i += 1
            sign = -sign
            ch = self._peek()
            if ch is None or not ch.isdigit():
                self._fail("expected digits")
        if ch in _UNITS:
            self.i += 1
            comps[1 + _UNITS.index(ch)] += sign
            return
        num = self._digits()
        den = 1
        if self._peek() == "/":
            self.i += 1
            den = self._digits()
            if den == 0:
                self.i -= 1
                self._fail("zero denominator")
        value = Fraction(num, den) * sign
        ch = self._peek()
        if ch is not None and ch in _UNITS:
            self.i += 1
            comps[1 + _UNITS.index(ch)] += value
        else:
            comps[0] += value


def _format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_quaternion(q: Quaternion) -> str:
    """Canonical literal: zero components omitted, unit coefficients +-1 elided."""
    parts = []
    for idx, comp in enumerate(q.components()):
        if comp == 0:
            continue
        neg = comp < 0
        mag = -comp if neg else comp
        if idx == 0:
            body = _format_rational(mag)
        elif mag == 1:
            body = _UNITS[idx - 1]
        else:
            body = _format_rational(mag) + _UNITS[idx - 1]
        if parts:
            parts.append(("-" if neg else "+") + body)
        else:
            parts.append(("-" if neg else "") + body)
    return "".join(parts) if parts else "0"
