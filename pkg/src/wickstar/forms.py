"""Exterior forms in dz^k and dw^l with rational-function coefficients.

A form is a linear combination of basis wedges dz^K ^ dw^L where K and L are
strictly increasing index tuples and all dz factors precede all dw factors.
Mixed degrees may coexist in one Form (e.g. the contraction of a (1,1)-form
is a (1,0)+(0,1) one-form); antisymmetry is canonical through sorted index
sets with sign normalization.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from .ratfunc import RationalFunction
from .scalars import Scalar

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _insert_sorted(indices: Tuple[int, ...], new: int) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Insert ``new`` into a strictly increasing tuple, tracking the sign.

    Returns None when the index already occurs (the wedge vanishes).
    """
    if new in indices:
        return None
    pos = 0
    while pos < len(indices) and indices[pos] < new:
        pos += 1
    sign = -1 if pos % 2 else 1
    return indices[:pos] + (new,) + indices[pos:], sign


class Form:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Dict[Key, RationalFunction]):
        self.dim = dim
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    @staticmethod
    def zero(dim: int) -> "Form":
        return Form(dim, {})

    @staticmethod
    def function(f: RationalFunction) -> "Form":
        return Form(f.dim, {((), ()): f})

    @staticmethod
    def one_one(dim: int, coefficients) -> "Form":
        """Build F_{kl} dz^k ^ dw^l from an n x n coefficient array."""
        terms: Dict[Key, RationalFunction] = {}
        for k in range(dim):
            for l in range(dim):
                c = coefficients[k][l]
                if not c.is_zero():
                    terms[((k,), (l,))] = c
        return Form(dim, terms)

    def coefficient(self, zidx: Tuple[int, ...], widx: Tuple[int, ...]) -> RationalFunction:
        return self.terms.get((tuple(zidx), tuple(widx)), RationalFunction.zero(self.dim))

    def degrees(self) -> set:
        return {(len(z), len(w)) for z, w in self.terms}

    def is_type(self, p: int, q: int) -> bool:
        return all(len(z) == p and len(w) == q for z, w in self.terms)

    def total_degree_at_least(self, d: int) -> bool:
        return all(len(z) + len(w) >= d for z, w in self.terms)

    def __add__(self, other: "Form") -> "Form":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Form(self.dim, out)

    def __sub__(self, other: "Form") -> "Form":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] - c if k in out else -c
        return Form(self.dim, out)

    def __neg__(self) -> "Form":
        return Form(self.dim, {k: -c for k, c in self.terms.items()})

    def __mul__(self, factor: RationalFunction) -> "Form":
        return Form(self.dim, {k: c * factor for k, c in self.terms.items()})

    def scale(self, c: Scalar) -> "Form":
        return Form(self.dim, {k: f.scale(c) for k, f in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def zero_like(self) -> "Form":
        return Form.zero(self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = RationalFunction.zero(self.dim)
        return all(self.terms.get(k, z) == other.terms.get(k, z) for k in keys)

    # -- exterior calculus ---------------------------------------------------

    def dol(self) -> "Form":
        """Holomorphic Dolbeault differential (adds a dz factor in front)."""
        n = self.dim
        out: Dict[Key, RationalFunction] = {}
        for (zi, wi), c in self.terms.items():
            for m in range(n):
                dc = c.diff(m)
                if dc.is_zero():
                    continue
                ins = _insert_sorted(zi, m)
                if ins is None:
                    continue
                nz, sign = ins
                key = (nz, wi)
                val = dc if sign > 0 else -dc
                out[key] = out[key] + val if key in out else val
        return Form(n, out)

    def dolbar(self) -> "Form":
        """Anti-holomorphic Dolbeault differential (a dw factor crosses all dz's)."""
        n = self.dim
        out: Dict[Key, RationalFunction] = {}
        for (zi, wi), c in self.terms.items():
            zsign = -1 if len(zi) % 2 else 1
            for m in range(n):
                dc = c.diff(n + m)
                if dc.is_zero():
                    continue
                ins = _insert_sorted(wi, m)
                if ins is None:
                    continue
                nw, sign = ins
                key = (zi, nw)
                val = dc if sign * zsign > 0 else -dc
                out[key] = out[key] + val if key in out else val
        return Form(n, out)

    def d(self) -> "Form":
        return self.dol() + self.dolbar()

    def interior(self, field) -> "Form":
        """Interior product i_X, contracting in the first slot.

        For a (1,1)-form F_{kl} dz^k ^ dw^l this is
        chi^k F_{kl} dw^l - chibar^l F_{kl} dz^k.
        """
        if ((), ()) in self.terms:
            raise ValueError("interior product needs total degree >= 1")
        n = self.dim
        out: Dict[Key, RationalFunction] = {}

        def accumulate(key: Key, val: RationalFunction):
            if val.is_zero():
                return
            out[key] = out[key] + val if key in out else val

        for (zi, wi), c in self.terms.items():
            for pos, k in enumerate(zi):
                comp = field.hol[k]
                if comp.is_zero():
                    continue
                sign = -1 if pos % 2 else 1
                val = c * comp
                accumulate((zi[:pos] + zi[pos + 1:], wi), val if sign > 0 else -val)
            zsign = -1 if len(zi) % 2 else 1
            for pos, l in enumerate(wi):
                comp = field.antihol[l]
                if comp.is_zero():
                    continue
                sign = zsign * (-1 if pos % 2 else 1)
                val = c * comp
                accumulate((zi, wi[:pos] + wi[pos + 1:]), val if sign > 0 else -val)
        return Form(n, out)

    def lie(self, field) -> "Form":
        """Lie derivative by the Cartan formula i_X d + d i_X."""
        if ((), ()) in self.terms:
            # On functions the Cartan formula degenerates to i_X d f = X(f).
            fn = self.terms[((), ())]
            rest = Form(self.dim, {k: c for k, c in self.terms.items() if k != ((), ())})
            head = Form.function(field.apply(fn))
            return head + rest.lie(field) if rest.terms else head
        return self.d().interior(field) + self.interior(field).d()

    def evaluate(self, *fields) -> RationalFunction:
        """Evaluate a homogeneous degree-k form on k vector fields."""
        form = self
        for x in fields:
            form = form.interior(x)
        value = form.terms.get(((), ()), RationalFunction.zero(self.dim))
        if any(k != ((), ()) for k in form.terms):
            raise ValueError("degree mismatch when evaluating form")
        return value

    def __repr__(self):
        parts = []
        for (zi, wi), c in sorted(self.terms.items()):
            basis = "^".join(
                [f"dz{k + 1}" for k in zi] + [f"dw{l + 1}" for l in wi]
            )
            parts.append(f"({c}) {basis}" if basis else f"({c})")
        return "Form(" + (" + ".join(parts) or "0") + ")"
