"""Gaussian rationals: complex numbers with exact rational real/imaginary parts.

All coefficient arithmetic in the engine runs over this field.  No floating
point is used anywhere; ``Fraction`` keeps both parts in lowest terms with
positive denominators.
"""

from __future__ import annotations

from fractions import Fraction


class Scalar:
    """An element of Q(i), immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _raw(re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(Scalar)
        s.re = re
        s.im = im
        return s

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar._raw(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._raw(a * c, Fraction(0))
        return Scalar._raw(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("zero divisor")
            return Scalar._raw(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return Scalar._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return ONE / (self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def scale(self, other: "Scalar") -> "Scalar":
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def zero_like(self) -> "Scalar":
        return ZERO

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self):
        from .expr import render_scalar

        return render_scalar(self)


ZERO = Scalar._raw(Fraction(0), Fraction(0))
ONE = Scalar._raw(Fraction(1), Fraction(0))
MINUS_ONE = Scalar._raw(Fraction(-1), Fraction(0))
I = Scalar._raw(Fraction(0), Fraction(1))


def rational(p, q=1) -> Scalar:
    """Real rational p/q as a Scalar."""
    return Scalar._raw(Fraction(p, q), Fraction(0))
