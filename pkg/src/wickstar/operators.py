"""Differential operators with rational-function coefficients.

A DiffOperator is a finite sum of terms coef * d_z^A d_w^B where A and B are
multi-indices of length n over the holomorphic and anti-holomorphic
directions.  Application to a rational function is exact.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .multiindex import MultiIndex
from .ratfunc import RationalFunction

Key = Tuple[MultiIndex, MultiIndex]


def diff_multi(f: RationalFunction, a: MultiIndex, b: MultiIndex) -> RationalFunction:
    """Apply d_z^a d_w^b to f."""
    n = f.dim
    for i, k in enumerate(a):
        for _ in range(k):
            f = f.diff(i)
    for i, k in enumerate(b):
        for _ in range(k):
            f = f.diff(n + i)
    return f


class DiffOperator:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Dict[Key, RationalFunction]):
        self.dim = dim
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    @staticmethod
    def zero(dim: int) -> "DiffOperator":
        return DiffOperator(dim, {})

    @staticmethod
    def multiplication(f: RationalFunction) -> "DiffOperator":
        n = f.dim
        return DiffOperator(n, {((0,) * n, (0,) * n): f})

    def apply(self, f: RationalFunction) -> RationalFunction:
        out = RationalFunction.zero(self.dim)
        for (a, b), coef in sorted(self.terms.items()):
            d = diff_multi(f, a, b)
            if not d.is_zero():
                out = out + coef * d
        return out

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return DiffOperator(self.dim, out)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] - c if k in out else -c
        return DiffOperator(self.dim, out)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(self.dim, {k: -c for k, c in self.terms.items()})

    def scale(self, f: RationalFunction) -> "DiffOperator":
        return DiffOperator(self.dim, {k: c * f for k, c in self.terms.items()})

    def w_order(self) -> int:
        """Highest total anti-holomorphic derivative order."""
        return max((sum(b) for (_, b) in self.terms), default=0)

    def z_order(self) -> int:
        return max((sum(a) for (a, _) in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def zero_like(self) -> "DiffOperator":
        return DiffOperator.zero(self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = RationalFunction.zero(self.dim)
        return all(self.terms.get(k, z) == other.terms.get(k, z) for k in keys)

    def __repr__(self):
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            parts.append(f"({c})*dz^{list(a)}*dw^{list(b)}")
        return "DiffOperator(" + (" + ".join(parts) or "0") + ")"
