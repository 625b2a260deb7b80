"""Kahler chart data and the derived geometry.

A chart stores the potential-derivative tuples u^(s)_k (and optionally
vbar^(s)_l) per deformation order; the potential itself is never stored.
The metric is g_{kl} = d_{w^l} u^(0)_k, the characterizing two-form is the
series of (1,1)-forms with order-s coefficients d_{w^l} u^(s)_k, and the
connection, curvature, Ricci form and covariant divergence all come from g
by the standard chart formulas, exactly.

Positivity of the metric is never required (pseudo-Kahler data is fine);
nondegeneracy det g != 0 is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ValidationError
from .fields import VectorField, _det
from .forms import Form
from .ratfunc import RationalFunction
from .scalars import Scalar
from .series import Series


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ChartReport:
    checks: Tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.ok]


class Metric:
    """Nondegenerate metric block g_{kl}, its exact inverse, and det g."""

    __slots__ = ("g", "ginv", "detg")

    def __init__(self, g: List[List[RationalFunction]]):
        n = len(g)
        self.g = g
        self.detg = _det(g)
        if self.detg.is_zero():
            raise ValidationError("degenerate metric: det g = 0")
        self.ginv = _inverse_from_adjugate(g, self.detg)

    @property
    def dim(self) -> int:
        return len(self.g)


def _inverse_from_adjugate(g, detg) -> List[List[RationalFunction]]:
    n = len(g)
    if n == 1:
        one = RationalFunction.one(g[0][0].dim)
        return [[one / g[0][0]]]
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [g[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = _det(minor)
            if (i + j) % 2:
                cof = -cof
            inv[i][j] = cof / detg
    return inv


class Chart:
    """Chart of complex dimension n with truncation order N.

    ``u[s][k]`` is the order-s potential derivative in the z^k direction,
    s = 0..N; ``v`` (optional) mirrors it in the w directions.
    """

    def __init__(
        self,
        dim: int,
        order: int,
        u: Sequence[Sequence[RationalFunction]],
        v: Optional[Sequence[Sequence[RationalFunction]]] = None,
    ):
        if dim < 1:
            raise ValidationError("chart dimension must be at least 1")
        if order < 0:
            raise ValidationError("truncation order must be non-negative")
        self.dim = dim
        self.order = order
        zero_row = tuple(RationalFunction.zero(dim) for _ in range(dim))
        rows = [tuple(row) for row in u][: order + 1]
        while len(rows) < order + 1:
            rows.append(zero_row)
        self.u: Tuple[Tuple[RationalFunction, ...], ...] = tuple(rows)
        if v is not None:
            vrows = [tuple(row) for row in v][: order + 1]
            while len(vrows) < order + 1:
                vrows.append(zero_row)
            self.v: Optional[Tuple[Tuple[RationalFunction, ...], ...]] = tuple(vrows)
        else:
            self.v = None
        for row in self.u:
            if len(row) != dim:
                raise ValidationError("each u tuple needs n components")
        if self.v is not None:
            for row in self.v:
                if len(row) != dim:
                    raise ValidationError("each v tuple needs n components")
        self._metric: Optional[Metric] = None

    # -- validation ----------------------------------------------------------

    def validate(self) -> ChartReport:
        """Check all chart invariants exactly and report each one."""
        n = self.dim
        checks: List[CheckResult] = []
        sym_ok = True
        for s in range(self.order + 1):
            for j in range(n):
                for k in range(j + 1, n):
                    if self.u[s][k].diff(j) != self.u[s][j].diff(k):
                        sym_ok = False
                        checks.append(
                            CheckResult(
                                "u-symmetry",
                                False,
                                f"d_z{j + 1} u{k + 1} != d_z{k + 1} u{j + 1} at order {s}",
                            )
                        )
        if sym_ok:
            checks.append(CheckResult("u-symmetry", True))

        g = [[self.u[0][k].diff(n + l) for l in range(n)] for k in range(n)]
        detg = _det(g)
        if detg.is_zero():
            checks.append(CheckResult("nondegeneracy", False, "det g = 0"))
        else:
            checks.append(CheckResult("nondegeneracy", True))

        if self.v is not None:
            vsym_ok = True
            for s in range(self.order + 1):
                for l in range(n):
                    for m in range(l + 1, n):
                        if self.v[s][l].diff(n + m) != self.v[s][m].diff(n + l):
                            vsym_ok = False
                            checks.append(
                                CheckResult(
                                    "v-symmetry",
                                    False,
                                    f"d_w{m + 1} v{l + 1} != d_w{l + 1} v{m + 1} at order {s}",
                                )
                            )
            if vsym_ok:
                checks.append(CheckResult("v-symmetry", True))
            compat_ok = True
            for s in range(self.order + 1):
                for k in range(n):
                    for l in range(n):
                        if self.v[s][l].diff(k) != self.u[s][k].diff(n + l):
                            compat_ok = False
                            checks.append(
                                CheckResult(
                                    "uv-compatibility",
                                    False,
                                    f"d_z{k + 1} v{l + 1} != d_w{l + 1} u{k + 1} at order {s}",
                                )
                            )
            if compat_ok:
                checks.append(CheckResult("uv-compatibility", True))
        return ChartReport(tuple(checks))

    def require_valid(self) -> "Chart":
        report = self.validate()
        if not report.ok:
            raise ValidationError(
                "invalid chart: " + "; ".join(f"{c.name}: {c.detail}" for c in report.failures()),
                [(c.name, c.detail) for c in report.failures()],
            )
        return self

    # -- derived geometry ------------------------------------------------------

    def metric(self) -> Metric:
        if self._metric is None:
            n = self.dim
            g = [[self.u[0][k].diff(n + l) for l in range(n)] for k in range(n)]
            self._metric = Metric(g)
        return self._metric

    def u_series(self, k: int) -> Series:
        return Series([self.u[s][k] for s in range(self.order + 1)])

    def v_series(self, l: int) -> Series:
        if self.v is None:
            raise ValidationError("chart has no v data")
        return Series([self.v[s][l] for s in range(self.order + 1)])

    def karabegov_form(self) -> Series:
        """Series of closed (1,1)-forms; the order-0 part is the chart form omega."""
        n = self.dim
        out = []
        for s in range(self.order + 1):
            coeffs = [[self.u[s][k].diff(n + l) for l in range(n)] for k in range(n)]
            out.append(Form.one_one(n, coeffs))
        return Series(out)

    def omega(self) -> Form:
        return Form.one_one(self.dim, self.metric().g)

    def has_corrections(self) -> bool:
        return any(not f.is_zero() for row in self.u[1:] for f in row)

    def christoffels(self):
        """Holomorphic and mirrored Christoffel blocks.

        gamma[k][l][m] is the coefficient of Z_m in nabla_{Z_k} Z_l;
        gammabar mirrors it in the anti-holomorphic directions.  The mixed
        blocks vanish for chart data satisfying the u-symmetry invariant.
        """
        n = self.dim
        m = self.metric()
        dg_z = [[[m.g[a][b].diff(k) for b in range(n)] for a in range(n)] for k in range(n)]
        dg_w = [[[m.g[a][b].diff(n + k) for b in range(n)] for a in range(n)] for k in range(n)]
        gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
        gammabar = [[[None] * n for _ in range(n)] for _ in range(n)]
        for k in range(n):
            for l in range(n):
                for mm in range(n):
                    acc = RationalFunction.zero(n)
                    accbar = RationalFunction.zero(n)
                    for q in range(n):
                        acc = acc + dg_z[k][l][q] * m.ginv[q][mm]
                        accbar = accbar + m.ginv[mm][q] * dg_w[k][q][l]
                    gamma[k][l][mm] = acc
                    gammabar[k][l][mm] = accbar
        return gamma, gammabar

    def curvature(self):
        """Curvature endomorphism blocks of the chart connection.

        Returns (mixed_hol, mixed_anti, holhol) where
        mixed_hol[k][l][j][m]  = coefficient of Z_m in R(Z_k, Zbar_l) Z_j,
        mixed_anti[k][l][j][m] = coefficient of Zbar_m in R(Z_k, Zbar_l) Zbar_j,
        holhol[k][j][i][m]     = coefficient of Z_m in R(Z_k, Z_j) Z_i
        (the last vanishes for valid chart data and is exposed for checking).
        """
        n = self.dim
        gamma, gammabar = self.christoffels()
        mixed_hol = [
            [[[-gamma[k][j][m].diff(n + l) for m in range(n)] for j in range(n)] for l in range(n)]
            for k in range(n)
        ]
        mixed_anti = [
            [[[gammabar[l][j][m].diff(k) for m in range(n)] for j in range(n)] for l in range(n)]
            for k in range(n)
        ]
        holhol = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for k in range(n):
            for j in range(n):
                for i in range(n):
                    for m in range(n):
                        acc = gamma[j][i][m].diff(k) - gamma[k][i][m].diff(j)
                        for q in range(n):
                            acc = acc + gamma[k][q][m] * gamma[j][i][q]
                            acc = acc - gamma[j][q][m] * gamma[k][i][q]
                        holhol[k][j][i][m] = acc
        return mixed_hol, mixed_anti, holhol

    def ricci_form(self) -> Form:
        """-1/4 tr(R(.,.) I), traced over the complexified frame (Z_k, Zbar_l)."""
        n = self.dim
        mixed_hol, mixed_anti, _ = self.curvature()
        i = Scalar(0, 1)
        neg_quarter = Scalar(Fraction(-1, 4))
        coeffs = [[None] * n for _ in range(n)]
        for k in range(n):
            for l in range(n):
                tr_h = RationalFunction.zero(n)
                tr_a = RationalFunction.zero(n)
                for m in range(n):
                    tr_h = tr_h + mixed_hol[k][l][m][m]
                    tr_a = tr_a + mixed_anti[k][l][m][m]
                val = tr_h.scale(i) - tr_a.scale(i)
                coeffs[k][l] = val.scale(neg_quarter)
        return Form.one_one(n, coeffs)

    def covariant_div(self, x: VectorField) -> RationalFunction:
        """Trace of V -> nabla_V X over the complexified frame."""
        n = self.dim
        m = self.metric()
        # sum_k Gamma^k_{kq} = d_{z^q} det g / det g, and mirrored.
        dlog_z = [m.detg.diff(q) / m.detg for q in range(n)]
        dlog_w = [m.detg.diff(n + q) / m.detg for q in range(n)]
        out = RationalFunction.zero(n)
        for k in range(n):
            out = out + x.hol[k].diff(k) + dlog_z[k] * x.hol[k]
            out = out + x.antihol[k].diff(n + k) + dlog_w[k] * x.antihol[k]
        return out

    def hamiltonian_field(self, a0: RationalFunction) -> VectorField:
        """The unique X with i_X omega = d a0, via the inverse metric."""
        n = self.dim
        m = self.metric()
        hol = []
        antihol = []
        for k in range(n):
            acc = RationalFunction.zero(n)
            for l in range(n):
                acc = acc + a0.diff(n + l) * m.ginv[l][k]
            hol.append(acc)
        for l in range(n):
            acc = RationalFunction.zero(n)
            for k in range(n):
                acc = acc + m.ginv[l][k] * a0.diff(k)
            antihol.append(-acc)
        return VectorField(hol, antihol)

    def __repr__(self):
        return f"Chart(dim={self.dim}, order={self.order})"
