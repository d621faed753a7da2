"""Exact scalars: rationals via :class:`fractions.Fraction`, plus Q(sqrt 3).

The quadratic field is only needed for the su(3) structure constants, whose
Gell-Mann normalisation contains sqrt(3)/2.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*sqrt\(3\))?")


class QSqrt3:
    """The number ``a + b*sqrt(3)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _lift(other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return QSqrt3(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt3":
        return QSqrt3(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 3 * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        num = self * o.conjugate()
        return QSqrt3(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign of ``a + b sqrt 3``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        return sa if self.a * self.a > 3 * self.b * self.b else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * 3.0 ** 0.5

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sb = "+" if self.b > 0 else "-"
        b = abs(self.b)
        head = "" if self.a == 0 else f"{self.a}"
        if head == "":
            return f"{'-' if self.b < 0 else ''}{b}*sqrt(3)"
        return f"{head}{sb}{b}*sqrt(3)"


SQRT3 = QSqrt3(0, 1)


def parse_scalar(text):
    """Parse ``"3"``, ``"-2/3"`` or ``"1/2 + 1/2*sqrt(3)"`` exactly."""
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"coefficients must be strings or integers, got {text!r}")
    s = text.replace(" ", "")
    if "sqrt" not in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {text!r}") from exc
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"bad Q(sqrt 3) scalar {text!r}")
        value = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            value = -value
        if m.group(3):
            b += value
        else:
            a += value
        pos = m.end()
    return QSqrt3(a, b) if b else a


def format_scalar(c) -> str:
    if isinstance(c, QSqrt3):
        return str(c) if c.b else str(c.a)
    return str(Fraction(c))
