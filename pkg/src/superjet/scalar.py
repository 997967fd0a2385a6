"""Exact arithmetic in the number field Q(i, sqrt2).

An element is stored as four rationals (a, b, c, d) standing for
a + b*i + c*sqrt2 + d*i*sqrt2.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Scalar:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = _frac(a)
        self.b = _frac(b)
        self.c = _frac(c)
        self.d = _frac(d)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> "Scalar":
        s = object.__new__(cls)
        s.a, s.b, s.c, s.d = a, b, c, d
        return s

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls._raw(_frac(x), _ZERO, _ZERO, _ZERO)

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return Scalar._raw(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, -self.c, -self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return Scalar._raw(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                o = _frac(other)
                return Scalar._raw(self.a * o, self.b * o, self.c * o, self.d * o)
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        if not (b2 or c2 or d2):
            return Scalar._raw(a1 * a2, b1 * a2, c1 * a2, d1 * a2)
        if not (b1 or c1 or d1):
            return Scalar._raw(a1 * a2, a1 * b2, a1 * c2, a1 * d2)
        # basis products: i*i=-1, r*r=2, (ir)*(ir)=-2, i*r=ir, i*ir=-r, r*ir=2i
        a = a1 * a2 - b1 * b2 + 2 * c1 * c2 - 2 * d1 * d2
        b = a1 * b2 + b1 * a2 + 2 * c1 * d2 + 2 * d1 * c2
        c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return Scalar._raw(a, b, c, d)

    __rmul__ = __mul__

    def conj_i(self) -> "Scalar":
        """Galois conjugate i -> -i."""
        return Scalar._raw(self.a, -self.b, self.c, -self.d)

    def conj_r(self) -> "Scalar":
        """Galois conjugate sqrt2 -> -sqrt2."""
        return Scalar._raw(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        if self.is_rational():
            return Scalar._raw(1 / self.a, _ZERO, _ZERO, _ZERO)
        # x * conj_i(x) lies in Q(sqrt2); then multiply by its sqrt2-conjugate
        m = self * self.conj_i()
        n = m * m.conj_r()
        assert n.is_rational()
        return self.conj_i() * m.conj_r() * Scalar._raw(1 / n.a, _ZERO, _ZERO, _ZERO)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            o = _frac(other)
            return Scalar._raw(self.a / o, self.b / o, self.c / o, self.d / o)
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b and self.c == other.c and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.a == other and not (self.b or self.c or self.d)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    # presentation ---------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        terms = []
        for coeff, unit in ((self.a, ""), (self.b, "I"), (self.c, "SQRT2"), (self.d, "I*SQRT2")):
            if not coeff:
                continue
            if unit == "":
                terms.append(str(coeff))
            elif coeff == 1:
                terms.append(unit)
            elif coeff == -1:
                terms.append("-" + unit)
            else:
                terms.append(f"{coeff}*{unit}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b), str(self.c), str(self.d)]

    @classmethod
    def from_json(cls, data) -> "Scalar":
        return cls(*data)


ZERO = Scalar._raw(_ZERO, _ZERO, _ZERO, _ZERO)
ONE = Scalar._raw(_ONE, _ZERO, _ZERO, _ZERO)
I = Scalar._raw(_ZERO, _ONE, _ZERO, _ZERO)
SQRT2 = Scalar._raw(_ZERO, _ZERO, _ONE, _ZERO)


def S(x) -> Scalar:
    """Coerce an int, Fraction, rational string or Scalar to a Scalar."""
    return Scalar.coerce(x)
