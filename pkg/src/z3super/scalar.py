"""Arithmetic in the cyclotomic field Q(q), q^2 + q + 1 = 0.

Every element is stored as ``a + b*q`` with rational ``a`` and ``b``; the
``q^2`` component is eliminated eagerly so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["CycScalar", "Q", "ONE", "ZERO", "q_pow", "as_scalar"]


class CycScalar:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return CycScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return CycScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CycScalar(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        # (a + bq)(c + dq) = ac + (ad + bc) q + bd q^2,  q^2 = -1 - q
        bd = b * d
        return CycScalar(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm to Q: (a + bq)(a + b q^2) = a^2 - ab + b^2."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "CycScalar":
        """Galois conjugate q -> q^2."""
        return CycScalar(self.a - self.b, -self.b)

    def inv(self) -> "CycScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        c = self.conjugate()
        return CycScalar(c.a / n, c.b / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def q_monomial(self):
        """Return ``(c, n)`` with ``self == c * q**n`` for rational c, or None."""
        if self.b == 0:
            return self.a, 0
        if self.a == 0:
            return self.b, 1
        if self.a == self.b:
            # a(1 + q) = -a q^2
            return -self.a, 2
        return None

    def __repr__(self):
        return f"CycScalar({self.a}, {self.b})"

    def __str__(self):
        from .expr import render_scalar

        return render_scalar(self)

    def to_complex(self) -> complex:
        """Numeric value at q = exp(2 pi i / 3); for cross-checks only."""
        return float(self.a) + float(self.b) * complex(-0.5, 3 ** 0.5 / 2)


def _coerce(x):
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Rational)):
        return CycScalar(x, 0)
    return NotImplemented


def as_scalar(x) -> CycScalar:
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return c


ZERO = CycScalar(0, 0)
ONE = CycScalar(1, 0)
Q = CycScalar(0, 1)
_POWERS = (ONE, Q, CycScalar(-1, -1))


def q_pow(n: int) -> CycScalar:
    """q**n for any integer n, using q^3 = 1."""
    return _POWERS[n % 3]
