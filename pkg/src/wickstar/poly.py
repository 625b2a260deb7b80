"""Sparse multivariate polynomials over Gaussian rationals.

A chart of complex dimension n gives 2n commuting variables: z_1..z_n at
slots 0..n-1 and w_1..w_n at slots n..2n-1 (w_l stands for the conjugate of
z_l).  Terms map dense exponent tuples of length 2n to nonzero Scalar
coefficients; the zero polynomial is the empty map, so equality of term
maps is equality of polynomials.
"""

from __future__ import annotations

from typing import Dict, Iterator, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

Exponents = Tuple[int, ...]
Terms = Dict[Exponents, Scalar]


class Polynomial:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Terms):
        # Callers hand over ownership of ``terms``; zero coefficients must
        # already be absent.
        self.dim = dim
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(dim: int) -> "Polynomial":
        return Polynomial(dim, {})

    @staticmethod
    def const(dim: int, c: Scalar) -> "Polynomial":
        if c.is_zero():
            return Polynomial(dim, {})
        return Polynomial(dim, {(0,) * (2 * dim): c})

    @staticmethod
    def one(dim: int) -> "Polynomial":
        return Polynomial.const(dim, ONE)

    @staticmethod
    def variable(dim: int, index: int) -> "Polynomial":
        if not 0 <= index < 2 * dim:
            raise IndexError(f"variable index {index} out of range for dimension {dim}")
        e = [0] * (2 * dim)
        e[index] = 1
        return Polynomial(dim, {tuple(e): ONE})

    @staticmethod
    def monomial(dim: int, exps: Sequence[int], coef: Scalar = ONE) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != 2 * dim:
            raise ValueError("exponent vector length must be 2*dim")
        if coef.is_zero():
            return Polynomial(dim, {})
        return Polynomial(dim, {exps: coef})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Polynomial(self.dim, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = -c
            else:
                s = prev - c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Polynomial(self.dim, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms or not other.terms:
            return Polynomial(self.dim, {})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Terms = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                prev = out.get(e)
                if prev is None:
                    out[e] = c
                else:
                    s = prev + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
        return Polynomial(self.dim, out)

    def scale(self, c: Scalar) -> "Polynomial":
        if c.is_zero():
            return Polynomial(self.dim, {})
        if c.is_one():
            return self
        return Polynomial(self.dim, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.one(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def diff(self, var: int) -> "Polynomial":
        out: Terms = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            ne = e[:var] + (k - 1,) + e[var + 1:]
            nc = c * Scalar(k)
            prev = out.get(ne)
            out[ne] = nc if prev is None else prev + nc
        return Polynomial(self.dim, {e: c for e, c in out.items() if not c.is_zero()})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        ((e, c),) = self.terms.items()
        return c.is_one() and not any(e)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Optional[Scalar]:
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            e, c = next(iter(self.terms.items()))
            if not any(e):
                return c
        return None

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def leading_exponents(self) -> Exponents:
        """Largest exponent tuple in lexicographic order (the rendering order)."""
        return max(self.terms)

    def leading(self) -> Tuple[Exponents, Scalar]:
        e = max(self.terms)
        return e, self.terms[e]

    def coefficient(self, exps: Exponents) -> Scalar:
        return self.terms.get(tuple(exps), ZERO)

    def min_exponents(self) -> Exponents:
        """Componentwise minimum over all terms (the common monomial factor)."""
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, v in enumerate(e):
                if v < m[i]:
                    m[i] = v
        return tuple(m)

    def shift_down(self, shift: Exponents) -> "Polynomial":
        """Divide by the monomial with the given exponents (must divide every term)."""
        return Polynomial(
            self.dim,
            {tuple(x - s for x, s in zip(e, shift)): c for e, c in self.terms.items()},
        )

    def mirror_conjugate(self) -> "Polynomial":
        """Swap z- and w-variables and conjugate all coefficients.

        The formal counterpart of complex conjugation of a function.
        """
        n = self.dim
        out: Terms = {}
        for e, c in self.terms.items():
            out[e[n:] + e[:n]] = c.conjugate()
        return Polynomial(self.dim, out)

    def sorted_terms(self) -> Iterator[Tuple[Exponents, Scalar]]:
        """Terms in descending lexicographic exponent order (canonical order)."""
        for e in sorted(self.terms, reverse=True):
            yield e, self.terms[e]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .expr import render_polynomial

        return render_polynomial(self)


def exact_div(num: Polynomial, den: Polynomial) -> Optional[Polynomial]:
    """Quotient num/den when den divides num exactly, else None.

    Monomial division against the lexicographic leading term; exact quotients
    always succeed, non-divisible inputs fail (usually fast).
    """
    if den.is_zero():
        raise ZeroDivisionError("zero divisor")
    if num.is_zero():
        return num
    de, dc = den.leading()
    rem = num
    q: Terms = {}
    while rem.terms:
        re, rc = rem.leading()
        qe = tuple(a - b for a, b in zip(re, de))
        if any(x < 0 for x in qe):
            return None
        qc = rc / dc
        q[qe] = qc
        rem = rem - den * Polynomial(num.dim, {qe: qc})
    return Polynomial(num.dim, q)
