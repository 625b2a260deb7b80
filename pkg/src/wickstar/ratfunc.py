"""Rational functions in the chart variables, with exact field arithmetic.

Equality is decided by cross-multiplication (r1 == r2 iff n1*d2 - n2*d1 = 0),
so no multivariate GCD is needed.  A lightweight normalization keeps
expression growth under control: common monomial factors and scalar content
are cancelled, and exact polynomial division is attempted so quotients like
(z^2 - w^2)/(z - w) collapse.  Denominators are never zero.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import SingularSubstitution
from .poly import Polynomial, exact_div
from .scalars import ONE, Scalar


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero divisor")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p, Polynomial.one(p.dim))

    @staticmethod
    def zero(dim: int) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.zero(dim))

    @staticmethod
    def one(dim: int) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.one(dim))

    @staticmethod
    def const(dim: int, c: Scalar) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.const(dim, c))

    @staticmethod
    def variable(dim: int, index: int) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.variable(dim, index))

    # -- field operations --------------------------------------------------

    @property
    def dim(self) -> int:
        return self.num.dim

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFunction(a + c, b)
        # Denominators in one computation are usually powers of a common
        # base; exact division finds the lcm without factoring.
        q = exact_div(d, b)
        if q is not None:
            return RationalFunction(a * q + c, d)
        q = exact_div(b, d)
        if q is not None:
            return RationalFunction(a + c * q, b)
        return RationalFunction(a * d + c * b, b * d)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            return self
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        r = object.__new__(RationalFunction)
        r.num = -self.num
        r.den = self.den
        return r

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.zero(self.dim)
        # Cross-cancel before expanding to keep degrees low.
        a, b, c, d = self.num, self.den, other.num, other.den
        if not d.is_one():
            q = exact_div(a, d)
            if q is not None:
                a, d = q, Polynomial.one(self.dim)
        if not b.is_one():
            q = exact_div(c, b)
            if q is not None:
                c, b = q, Polynomial.one(self.dim)
        return RationalFunction(a * c, b * d)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("zero divisor")
        inv = object.__new__(RationalFunction)
        inv.num = other.den
        inv.den = other.num
        return self * inv

    def scale(self, c: Scalar) -> "RationalFunction":
        if c.is_zero():
            return RationalFunction.zero(self.dim)
        r = object.__new__(RationalFunction)
        r.num = self.num.scale(c)
        r.den = self.den
        return r

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def diff(self, var: int) -> "RationalFunction":
        if self.den.is_one():
            r = object.__new__(RationalFunction)
            r.num = self.num.diff(var)
            r.den = self.den
            return r
        dden = self.den.diff(var)
        if dden.is_zero():
            return RationalFunction(self.num.diff(var), self.den)
        return RationalFunction(
            self.num.diff(var) * self.den - self.num * dden, self.den * self.den
        )

    def substitute(self, images: Sequence["RationalFunction"]) -> "RationalFunction":
        """Replace variable i by images[i], exactly.

        Raises SingularSubstitution if the substituted denominator vanishes
        identically.
        """
        num = _substitute_poly(self.num, images)
        den = _substitute_poly(self.den, images)
        if den.num.is_zero():
            raise SingularSubstitution("singular substitution")
        return num / den

    # -- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.constant_value() is not None

    def constant_value(self) -> Optional[Scalar]:
        """The Scalar value when the function is constant, else None."""
        if self.num.is_zero():
            return self.num.constant_value()
        e, dc = self.den.leading()
        nc = self.num.terms.get(e)
        if nc is None:
            return None
        c = nc / dc
        return c if self.num == self.den.scale(c) else None

    def zero_like(self) -> "RationalFunction":
        return RationalFunction.zero(self.dim)

    def mirror_conjugate(self) -> "RationalFunction":
        return RationalFunction(self.num.mirror_conjugate(), self.den.mirror_conjugate())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        # Only structurally-normalized equals hash alike; adequate because
        # the engine never keys containers by RationalFunction.
        raise TypeError("RationalFunction is not hashable")

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        from .expr import render_ratfunc

        return render_ratfunc(self)


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if num.is_zero():
        return num, Polynomial.one(num.dim)
    if den.is_one():
        return num, den
    if not den.is_one():
        # Cancel the common monomial factor.
        sn = num.min_exponents()
        sd = den.min_exponents()
        shift = tuple(min(a, b) for a, b in zip(sn, sd))
        if any(shift):
            num = num.shift_down(shift)
            den = den.shift_down(shift)
        if not den.is_one():
            q = exact_div(num, den)
            if q is not None:
                return q, Polynomial.one(num.dim)
            q = exact_div(den, num)
            if q is not None and not q.is_constant():
                den = q
                num = Polynomial.one(num.dim)
    # Scalar content: make the lexicographic leading coefficient of den one.
    _, lc = den.leading()
    if not lc.is_one():
        inv = ONE / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def _substitute_poly(p: Polynomial, images: Sequence[RationalFunction]) -> RationalFunction:
    if len(images) != 2 * p.dim:
        raise ValueError("need one image per variable")
    if not p.terms:
        return RationalFunction.zero(images[0].dim) if images else RationalFunction.zero(p.dim)
    odim = images[0].dim
    # Cache powers of each image.
    maxe = [0] * (2 * p.dim)
    for e in p.terms:
        for i, v in enumerate(e):
            if v > maxe[i]:
                maxe[i] = v
    powers = []
    for i, img in enumerate(images):
        row = [RationalFunction.one(odim)]
        for _ in range(maxe[i]):
            row.append(row[-1] * img)
        powers.append(row)
    out = RationalFunction.zero(odim)
    for e, c in p.terms.items():
        term = RationalFunction.const(odim, c)
        for i, v in enumerate(e):
            if v:
                term = term * powers[i][v]
        out = out + term
    return out
