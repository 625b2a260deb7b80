"""Vector fields and holomorphic chart maps.

A vector field X = chi^k d_z^k + chibar^l d_w^l keeps its holomorphic and
anti-holomorphic component functions separately.  A ChartMap is a formal
holomorphic substitution: the z-images depend on z-variables only and the
w-images are their formal conjugates, so pull-backs preserve the complex
structure by construction.  Every map carries a verified inverse.
"""

from __future__ import annotations

from typing import Sequence, Tuple

from .errors import ValidationError
from .forms import Form, Key
from .poly import Polynomial
from .ratfunc import RationalFunction
from .scalars import Scalar


class VectorField:
    __slots__ = ("dim", "hol", "antihol")

    def __init__(self, hol: Sequence[RationalFunction], antihol: Sequence[RationalFunction]):
        if len(hol) != len(antihol) or not hol:
            raise ValidationError("field needs n holomorphic and n anti-holomorphic components")
        self.dim = len(hol)
        self.hol = tuple(hol)
        self.antihol = tuple(antihol)

    @staticmethod
    def zero(dim: int) -> "VectorField":
        z = RationalFunction.zero(dim)
        return VectorField((z,) * dim, (z,) * dim)

    def apply(self, f: RationalFunction) -> RationalFunction:
        n = self.dim
        out = RationalFunction.zero(n)
        for k in range(n):
            if not self.hol[k].is_zero():
                out = out + self.hol[k] * f.diff(k)
            if not self.antihol[k].is_zero():
                out = out + self.antihol[k] * f.diff(n + k)
        return out

    def apply_series(self, s):
        return s.map(self.apply)

    def bracket(self, other: "VectorField") -> "VectorField":
        hol = [self.apply(other.hol[m]) - other.apply(self.hol[m]) for m in range(self.dim)]
        antihol = [
            self.apply(other.antihol[m]) - other.apply(self.antihol[m]) for m in range(self.dim)
        ]
        return VectorField(hol, antihol)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(
            [a + b for a, b in zip(self.hol, other.hol)],
            [a + b for a, b in zip(self.antihol, other.antihol)],
        )

    def scale(self, c: Scalar) -> "VectorField":
        return VectorField([f.scale(c) for f in self.hol], [f.scale(c) for f in self.antihol])

    def complex_structure(self) -> "VectorField":
        """I X = i*chi - i*chibar (the complex structure applied to X)."""
        i = Scalar(0, 1)
        return VectorField(
            [f.scale(i) for f in self.hol], [f.scale(-i) for f in self.antihol]
        )

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.hol) and all(f.is_zero() for f in self.antihol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return all(a == b for a, b in zip(self.hol, other.hol)) and all(
            a == b for a, b in zip(self.antihol, other.antihol)
        )

    def __repr__(self):
        return f"VectorField(hol={[str(f) for f in self.hol]}, antihol={[str(f) for f in self.antihol]})"


def _det(rows) -> RationalFunction:
    n = len(rows)
    if n == 0:
        raise ValueError("empty determinant")
    if n == 1:
        return rows[0][0]
    dim = rows[0][0].dim
    out = RationalFunction.zero(dim)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


class ChartMap:
    __slots__ = ("dim", "hol_images", "antihol_images", "inverse_hol", "inverse_antihol")

    def __init__(
        self,
        hol_images: Sequence[RationalFunction],
        inverse_hol: Sequence[RationalFunction],
        antihol_images: Sequence[RationalFunction] = None,
        inverse_antihol: Sequence[RationalFunction] = None,
    ):
        self.dim = len(hol_images)
        n = self.dim
        self.hol_images = tuple(hol_images)
        self.antihol_images = (
            tuple(antihol_images)
            if antihol_images is not None
            else tuple(f.mirror_conjugate() for f in hol_images)
        )
        self.inverse_hol = tuple(inverse_hol)
        self.inverse_antihol = (
            tuple(inverse_antihol)
            if inverse_antihol is not None
            else tuple(f.mirror_conjugate() for f in inverse_hol)
        )
        self._validate()

    def _validate(self):
        n = self.dim
        problems = []
        for k, f in enumerate(self.hol_images):
            if _depends_on_w(f):
                problems.append(("holomorphic image depends on w", k))
        for k, f in enumerate(self.antihol_images):
            if f != self.hol_images[k].mirror_conjugate():
                problems.append(("anti-holomorphic image is not the mirror conjugate", k))
        if problems:
            raise ValidationError("invalid chart map", problems)
        images = self.images()
        inv_images = self.inverse_images()
        for idx in range(2 * n):
            var = RationalFunction.variable(n, idx)
            # phi(phi^{-1}) = id and phi^{-1}(phi) = id, exactly.
            if var.substitute(images).substitute(inv_images) != var:
                problems.append(("inverse does not invert on the left", idx))
            if var.substitute(inv_images).substitute(images) != var:
                problems.append(("inverse does not invert on the right", idx))
        if problems:
            raise ValidationError("chart map inverse fails to compose to the identity", problems)

    def images(self) -> Tuple[RationalFunction, ...]:
        return self.hol_images + self.antihol_images

    def inverse_images(self) -> Tuple[RationalFunction, ...]:
        return self.inverse_hol + self.inverse_antihol

    def inverted(self) -> "ChartMap":
        return ChartMap(self.inverse_hol, self.hol_images, self.inverse_antihol, self.antihol_images)

    def compose(self, other: "ChartMap") -> "ChartMap":
        """The map self after other (first apply other, then self)."""
        other_imgs = other.images()
        hol = [f.substitute(other_imgs) for f in self.hol_images]
        self_inv = self.inverse_images()
        inv_hol = [f.substitute(self_inv) for f in other.inverse_hol]
        return ChartMap(hol, inv_hol)

    # -- pullbacks -----------------------------------------------------------

    def pullback(self, obj):
        if isinstance(obj, RationalFunction):
            return obj.substitute(self.images())
        if isinstance(obj, Form):
            return self._pullback_form(obj)
        raise TypeError(f"cannot pull back {type(obj).__name__}")

    def pullback_series(self, s):
        return s.map(self.pullback)

    def _pullback_form(self, form: Form) -> Form:
        n = self.dim
        imgs = self.images()
        # Jacobians of the holomorphic and mirrored blocks.
        jz = [[self.hol_images[k].diff(m) for m in range(n)] for k in range(n)]
        jw = [[self.antihol_images[l].diff(n + m) for m in range(n)] for l in range(n)]
        out: dict[Key, RationalFunction] = {}
        for (zi, wi), c in form.terms.items():
            base = c.substitute(imgs)
            if base.is_zero():
                continue
            for ztarget in _increasing_tuples(n, len(zi)):
                dz = _det([[jz[k][m] for m in ztarget] for k in zi]) if zi else None
                if zi:
                    if dz.is_zero():
                        continue
                for wtarget in _increasing_tuples(n, len(wi)):
                    val = base
                    if zi:
                        val = val * dz
                    if wi:
                        dw = _det([[jw[l][m] for m in wtarget] for l in wi])
                        if dw.is_zero():
                            continue
                        val = val * dw
                    key = (ztarget, wtarget)
                    out[key] = out[key] + val if key in out else val
        return Form(n, out)

    def __repr__(self):
        return f"ChartMap(hol={[str(f) for f in self.hol_images]})"


def _depends_on_w(f: RationalFunction) -> bool:
    n = f.dim
    return any(
        any(e[n:]) for e in list(f.num.terms) + list(f.den.terms)
    )


def _increasing_tuples(n: int, k: int):
    if k == 0:
        yield ()
        return
    from itertools import combinations

    yield from combinations(range(n), k)
