"""Construction of the Wick-type product from chart data, with certificates.

House conventions.  Left factors are differentiated in z-directions only and
right factors in w-directions only, so anti-holomorphic left factors and
holomorphic right factors multiply pointwise.  The product is the unique one
whose right multiplication by each u_k acts as b -> b*u_k + nu*d_{z^k}(b):
the left-multiplication operator family L_a = sum_t nu^t A_t (A_t built from
w-derivatives of total order at most t, A_t(1) = 0 for t >= 1) is solved
order by order from the requirement that L_a commute with every such right
multiplication.  At order r this pins [A_r, m(u^(0)_k)] to data built from
A_0..A_{r-1}; matching w-derivative levels top-down yields small linear
systems whose matrices couple through the metric g_{kl}, solved exactly by
fraction-free elimination.  Uniqueness is structural: g is invertible.

The recursion is run once per chart with the left factor kept symbolic, so
each order yields the full bidifferential coefficient table
{(K, B) -> e_{K,B}} meaning  sum e_{K,B} d_z^K(a) d_w^B(b);  every product
evaluation afterwards is differentiation and exact rational arithmetic only.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linsolve, multiindex as mi
from .chart import Chart
from .errors import InternalConsistencyError, RecursionSingularError
from .forms import Form
from .operators import DiffOperator
from .poly import Polynomial
from .ratfunc import RationalFunction
from .scalars import Scalar
from .series import Series

MultiIndex = Tuple[int, ...]
SymCoef = Dict[MultiIndex, RationalFunction]  # sum_K coef * d_z^K(a), a symbolic


def _sym_add(into: SymCoef, other: SymCoef, sign: int = 1) -> None:
    for k, c in other.items():
        cur = into.get(k)
        val = c if sign > 0 else -c
        if cur is None:
            into[k] = val
        else:
            s = cur + val
            if s.is_zero():
                del into[k]
            else:
                into[k] = s


def _sym_scale(sym: SymCoef, f: RationalFunction) -> SymCoef:
    if f.is_zero():
        return {}
    return {k: c * f for k, c in sym.items()}


def _sym_diff_z(sym: SymCoef, k: int, n: int) -> SymCoef:
    """d_{z^k} of (sum_K c_K d_z^K a): differentiates coefficients and shifts K."""
    out: SymCoef = {}
    ek = mi.unit(n, k)
    for kk, c in sym.items():
        dc = c.diff(k)
        if not dc.is_zero():
            _sym_add(out, {kk: dc})
        _sym_add(out, {mi.add(kk, ek): c})
    return out


def _w_derivative_table(f: RationalFunction, n: int, depth: int) -> Dict[MultiIndex, RationalFunction]:
    """All d_w^beta f for |beta| <= depth."""
    table = {mi.zero(n): f}
    frontier = [mi.zero(n)]
    for _ in range(depth):
        nxt = []
        for b in frontier:
            for l in range(n):
                nb = mi.add(b, mi.unit(n, l))
                if nb not in table:
                    table[nb] = table[b].diff(n + l)
                    nxt.append(nb)
        frontier = nxt
    return table


def _zero_sym() -> SymCoef:
    return {}


def construct_coefficients(chart: Chart, order: int) -> List[Dict[Tuple[MultiIndex, MultiIndex], RationalFunction]]:
    """The bidifferential coefficient tables of the product, orders 0..order."""
    n = chart.dim
    g = chart.metric().g
    zero_mi = mi.zero(n)
    one_rf = RationalFunction.one(n)
    # w-derivatives of every u^(s)_k, to the depth the brackets can request.
    du = [
        [_w_derivative_table(chart.u[s][k], n, order) for k in range(n)]
        for s in range(min(order, chart.order) + 1)
    ]

    a_ops: List[Dict[MultiIndex, SymCoef]] = [{zero_mi: {zero_mi: one_rf}}]

    for r in range(1, order + 1):
        # Right-hand side of [A_r, m(u^(0)_k)] = RHS_k, indexed rhs[k][B'].
        rhs: List[Dict[MultiIndex, SymCoef]] = [dict() for _ in range(n)]
        for k in range(n):
            for b, sym in a_ops[r - 1].items():
                d = _sym_diff_z(sym, k, n)
                if d:
                    tgt = rhs[k].setdefault(b, _zero_sym())
                    _sym_add(tgt, d)
        for s in range(1, min(r, chart.order) + 1):
            lower = a_ops[r - s]
            for k in range(n):
                table = du[s][k]
                for b, sym in lower.items():
                    for beta in mi.sub_indices(b):
                        dcoef = table[beta]
                        if dcoef.is_zero():
                            continue
                        factor = dcoef.scale(Scalar(mi.binom(b, beta)))
                        tgt = rhs[k].setdefault(mi.sub(b, beta), _zero_sym())
                        _sym_add(tgt, _sym_scale(sym, factor), sign=-1)

        # Solve for the coefficients of A_r, w-levels top-down.
        solved: Dict[MultiIndex, SymCoef] = {}
        for level in range(r, 0, -1):
            unknowns = list(mi.with_total(n, level))
            col_of = {b: i for i, b in enumerate(unknowns)}
            rows: List[List[RationalFunction]] = []
            rhs_syms: List[SymCoef] = []
            zero_rf = RationalFunction.zero(n)
            for bprime in mi.with_total(n, level - 1):
                for k in range(n):
                    row = [zero_rf] * len(unknowns)
                    for l in range(n):
                        b = mi.add(bprime, mi.unit(n, l))
                        row[col_of[b]] = row[col_of[b]] + g[k][l].scale(Scalar(bprime[l] + 1))
                    val: SymCoef = {}
                    base = rhs[k].get(bprime)
                    if base:
                        _sym_add(val, base)
                    # Contributions of already-solved higher levels (|beta| >= 2).
                    table0 = du[0][k]
                    for bsol, sym in solved.items():
                        beta = mi.sub(bsol, bprime)
                        if any(x < 0 for x in beta) or sum(beta) < 2:
                            continue
                        dcoef = table0.get(beta)
                        if dcoef is None or dcoef.is_zero():
                            continue
                        factor = dcoef.scale(Scalar(mi.binom(bsol, beta)))
                        _sym_add(val, _sym_scale(sym, factor), sign=-1)
                    rows.append(row)
                    rhs_syms.append(val)
            all_k = sorted({kk for sym in rhs_syms for kk in sym})
            if not all_k:
                for b in unknowns:
                    solved[b] = {}
                continue
            rhs_rows = [[sym.get(kk, zero_rf) for kk in all_k] for sym in rhs_syms]
            sol = linsolve.solve(rows, rhs_rows)
            if sol.status != linsolve.UNIQUE:
                raise RecursionSingularError(r)
            for i, b in enumerate(unknowns):
                sym: SymCoef = {}
                for j, kk in enumerate(all_k):
                    c = sol.vectors[j][i]
                    if not c.is_zero():
                        sym[kk] = c
                solved[b] = sym
        a_ops.append({b: sym for b, sym in solved.items() if sym})

    tables: List[Dict[Tuple[MultiIndex, MultiIndex], RationalFunction]] = []
    for r, op in enumerate(a_ops):
        table: Dict[Tuple[MultiIndex, MultiIndex], RationalFunction] = {}
        for b, sym in op.items():
            for kk, c in sym.items():
                if not c.is_zero():
                    table[(kk, b)] = c
        tables.append(table)
    return tables


class _DerivCache:
    """Derivatives of a fixed function, filled on demand from smaller indices."""

    __slots__ = ("f", "n", "offset", "table")

    def __init__(self, f: RationalFunction, n: int, w_direction: bool):
        self.f = f
        self.n = n
        self.offset = n if w_direction else 0
        self.table: Dict[MultiIndex, RationalFunction] = {mi.zero(n): f}

    def get(self, idx: MultiIndex) -> RationalFunction:
        table = self.table
        got = table.get(idx)
        if got is not None:
            return got
        for j in range(self.n):
            if idx[j]:
                parent = mi.sub(idx, mi.unit(self.n, j))
                got = self.get(parent).diff(self.offset + j)
                table[idx] = got
                return got
        raise AssertionError("unreachable")


@dataclass
class CertificateReport:
    """Outcome of a complete finite verification sweep."""

    name: str
    ok: bool
    cases: int
    witness: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" witness: {self.witness}" if self.witness else ""
        return f"{self.name}: {status} ({self.cases} cases){extra}"


def _monomials(n: int, dmax: int) -> List[Tuple[MultiIndex, Polynomial]]:
    out = []
    for exps in sorted(mi.box(2 * n, dmax)):
        out.append((exps, Polynomial.monomial(n, exps)))
    return out


def _mono_name(n: int, exps: MultiIndex) -> str:
    from .expr import render_polynomial

    return render_polynomial(Polynomial.monomial(n, exps))


class StarProduct:
    """The constructed product on a chart, truncated at the chart order."""

    def __init__(self, chart: Chart, order: Optional[int] = None):
        chart.require_valid()
        self.chart = chart
        self.order = chart.order if order is None else order
        self.coefficient_tables = construct_coefficients(chart, self.order)
        self._sorted_tables = [sorted(t.items()) for t in self.coefficient_tables]

    @property
    def dim(self) -> int:
        return self.chart.dim

    # -- evaluation ------------------------------------------------------------

    def apply_table(self, r: int, da: _DerivCache, db: _DerivCache) -> RationalFunction:
        out = RationalFunction.zero(self.dim)
        for (kk, b), coef in self._sorted_tables[r]:
            left = da.get(kk)
            if left.is_zero():
                continue
            right = db.get(b)
            if right.is_zero():
                continue
            out = out + coef * left * right
        return out

    def star_rf(self, a: RationalFunction, b: RationalFunction) -> Series:
        """Product of two parameter-free functions, as a series."""
        da = _DerivCache(a, self.dim, w_direction=False)
        db = _DerivCache(b, self.dim, w_direction=True)
        return Series([self.apply_table(r, da, db) for r in range(self.order + 1)])

    def star(self, a: Series, b: Series) -> Series:
        """Product of two series, truncated at the working order."""
        n = min(self.order, a.order, b.order)
        zero = RationalFunction.zero(self.dim)
        out = [zero] * (n + 1)
        for s in range(n + 1):
            if a[s].is_zero():
                continue
            da = _DerivCache(a[s], self.dim, w_direction=False)
            for t in range(n + 1 - s):
                if b[t].is_zero():
                    continue
                db = _DerivCache(b[t], self.dim, w_direction=True)
                for r in range(n + 1 - s - t):
                    val = self.apply_table(r, da, db)
                    if not val.is_zero():
                        out[r + s + t] = out[r + s + t] + val
        return Series(out)

    def ad(self, a: Series, b: Series) -> Series:
        return self.star(a, b) - self.star(b, a)

    def left_mult_operator(self, a: Series) -> Series:
        """L_a as a series of w-directional operators (order-0 term multiplies)."""
        n = self.dim
        horizon = min(self.order, a.order)
        zero_a = mi.zero(n)
        ops = []
        caches = [_DerivCache(a[s], n, w_direction=False) for s in range(horizon + 1)]
        for t in range(horizon + 1):
            terms: Dict[Tuple[MultiIndex, MultiIndex], RationalFunction] = {}
            for s in range(t + 1):
                r = t - s
                if a[s].is_zero():
                    continue
                for (kk, b), coef in self.coefficient_tables[r].items():
                    left = caches[s].get(kk)
                    if left.is_zero():
                        continue
                    key = (zero_a, b)
                    val = coef * left
                    terms[key] = terms[key] + val if key in terms else val
            ops.append(DiffOperator(n, terms))
        return Series(ops)

    # -- structural invariants ---------------------------------------------------

    def verify_order_bound(self) -> CertificateReport:
        """Each order-r table differentiates at most r times on either side
        and never multiplies pointwise on both sides (r >= 1)."""
        cases = 0
        for r, table in enumerate(self.coefficient_tables):
            for (kk, b) in table:
                cases += 1
                if sum(b) > r or sum(kk) > r:
                    return CertificateReport("order-bound", False, cases, f"order {r}: K={kk} B={b}")
                if r >= 1 and (sum(kk) == 0 or sum(b) == 0):
                    return CertificateReport("order-bound", False, cases, f"order {r}: K={kk} B={b}")
        return CertificateReport("order-bound", True, cases)

    # -- certificates --------------------------------------------------------------

    def verify_wick_type(self, dmax: Optional[int] = None) -> CertificateReport:
        """Anti-holomorphic left factors and holomorphic right factors multiply
        pointwise, checked on every monomial pair with exponents <= dmax."""
        n = self.dim
        dmax = self.order if dmax is None else dmax
        monos = _monomials(n, dmax)
        zero_z = mi.zero(2 * n)
        cases = 0
        for exps_a, pa in monos:
            a = RationalFunction.from_poly(pa)
            anti_left = not any(exps_a[:n])
            for exps_b, pb in monos:
                hol_right = not any(exps_b[n:])
                if not (anti_left or hol_right):
                    continue
                cases += 1
                b = RationalFunction.from_poly(pb)
                prod = self.star_rf(a, b)
                if not all(prod[r].is_zero() for r in range(1, self.order + 1)):
                    return CertificateReport(
                        "wick-type", False, cases,
                        f"a={_mono_name(n, exps_a)} b={_mono_name(n, exps_b)}",
                    )
                if prod[0] != a * b:
                    return CertificateReport(
                        "wick-type", False, cases,
                        f"a={_mono_name(n, exps_a)} b={_mono_name(n, exps_b)}",
                    )
        return CertificateReport("wick-type", True, cases)

    def verify_defining_relation(self, dmax: Optional[int] = None) -> CertificateReport:
        """a * u_k = a u_k + nu d_{z^k} a on all monomials a (and the mirrored
        relation for the v data when the chart carries it)."""
        n = self.dim
        dmax = self.order if dmax is None else dmax
        cases = 0
        for exps_a, pa in _monomials(n, dmax):
            a = RationalFunction.from_poly(pa)
            a_series = Series.constant(a, self.order)
            for k in range(n):
                cases += 1
                u_k = self.chart.u_series(k).truncate(self.order)
                lhs = self.star(a_series, u_k)
                expected = u_k.scale(a) + Series.constant(a.diff(k), self.order).shift_up(1)
                if lhs != expected:
                    return CertificateReport(
                        "defining-relation", False, cases,
                        f"a={_mono_name(n, exps_a)} k={k + 1}",
                    )
            if self.chart.v is not None:
                for l in range(n):
                    cases += 1
                    v_l = self.chart.v_series(l).truncate(self.order)
                    lhs = self.star(v_l, a_series)
                    expected = v_l.scale(a) + Series.constant(a.diff(n + l), self.order).shift_up(1)
                    if lhs != expected:
                        return CertificateReport(
                            "defining-relation", False, cases,
                            f"a={_mono_name(n, exps_a)} l={l + 1} (v side)",
                        )
        return CertificateReport("defining-relation", True, cases)

    def verify_associativity(self, dmax: Optional[int] = None) -> CertificateReport:
        """(a*b)*c = a*(b*c) for all monomial triples with exponents <= dmax.

        Complete by the order bound: the tables differentiate at most
        ``order`` times, so agreement on the monomial box certifies the
        operator identity.  Requires dmax >= order.
        """
        dmax = self.order if dmax is None else dmax
        if dmax < self.order:
            raise ValueError("associativity sweep needs dmax >= truncation order")
        n = self.dim
        monos = _monomials(n, dmax)
        threads = int(os.environ.get("WICK_THREADS", "1") or "1")
        indices = list(range(len(monos)))
        if threads > 1 and len(monos) >= 4:
            witness = _assoc_parallel(self, monos, threads)
        else:
            witness = _assoc_scan(self, monos, indices)
        cases = len(monos) ** 3
        if witness is not None:
            return CertificateReport("associativity", False, cases, witness)
        return CertificateReport("associativity", True, cases)

    # -- characterizing form round trip ---------------------------------------------

    def right_mult_table(self, k: int) -> List[Dict[MultiIndex, RationalFunction]]:
        """Right multiplication by u_k as z-directional operators per order.

        Order-r entry maps K to the coefficient of d_z^K in the operator
        sending b to the order-r part of b * u_k.
        """
        n = self.dim
        out: List[Dict[MultiIndex, RationalFunction]] = []
        tables = [
            _w_derivative_table(self.chart.u[t][k], n, self.order)
            for t in range(self.chart.order + 1)
        ]
        for r in range(self.order + 1):
            acc: Dict[MultiIndex, RationalFunction] = {}
            for s in range(r + 1):
                t = r - s
                if t > self.chart.order:
                    continue
                for (kk, b), coef in self.coefficient_tables[s].items():
                    dub = tables[t].get(b)
                    if dub is None or dub.is_zero():
                        continue
                    val = coef * dub
                    acc[kk] = acc[kk] + val if kk in acc else val
            out.append({kk: c for kk, c in acc.items() if not c.is_zero()})
        return out

    def extract_karabegov(self) -> Series:
        """Recover the characterizing form from right-multiplication behavior.

        Verifies, at the operator level, that right multiplication by each u_k
        is exactly m(u_k) + nu d_{z^k}; the recovered potential derivatives
        then rebuild the form, which must match the chart's own form exactly.
        """
        n = self.dim
        zero_mi = mi.zero(n)
        for k in range(n):
            table = self.right_mult_table(k)
            for r in range(self.order + 1):
                expected: Dict[MultiIndex, RationalFunction] = {}
                if r <= self.chart.order and not self.chart.u[r][k].is_zero():
                    expected[zero_mi] = self.chart.u[r][k]
                if r == 1:
                    ek = mi.unit(n, k)
                    expected[ek] = expected.get(ek, RationalFunction.zero(n)) + RationalFunction.one(n)
                keys = set(table[r]) | set(expected)
                zero_rf = RationalFunction.zero(n)
                for kk in keys:
                    if table[r].get(kk, zero_rf) != expected.get(kk, zero_rf):
                        raise InternalConsistencyError(
                            f"right multiplication by u_{k + 1} deviates at order {r}, K={kk}"
                        )
        form = self.chart.karabegov_form().truncate(self.order)
        return form


def _assoc_scan(star: StarProduct, monos, a_indices) -> Optional[str]:
    n = star.dim
    rfs = [RationalFunction.from_poly(p) for _, p in monos]
    order = star.order
    das = [_DerivCache(f, n, w_direction=False) for f in rfs]
    dcs = [_DerivCache(f, n, w_direction=True) for f in rfs]
    # b*c products are shared across all left factors; cache them with
    # prepared z-derivative caches for the left application.
    bc_cache: Dict[Tuple[int, int], List[_DerivCache]] = {}

    def bc(bi: int, ci: int) -> List[_DerivCache]:
        got = bc_cache.get((bi, ci))
        if got is None:
            prod = star.star_rf(rfs[bi], rfs[ci])
            got = [_DerivCache(c, n, w_direction=True) for c in prod.coeffs]
            bc_cache[(bi, ci)] = got
        return got

    for ai in a_indices:
        da = das[ai]
        for bi in range(len(monos)):
            ab = star.star_rf(rfs[ai], rfs[bi])
            ab_caches = [_DerivCache(c, n, w_direction=False) for c in ab.coeffs]
            for ci in range(len(monos)):
                dc = dcs[ci]
                bc_caches = bc(bi, ci)
                for m in range(order + 1):
                    lhs = RationalFunction.zero(n)
                    rhs = RationalFunction.zero(n)
                    for s in range(m + 1):
                        lhs = lhs + star.apply_table(m - s, ab_caches[s], dc)
                        rhs = rhs + star.apply_table(m - s, da, bc_caches[s])
                    if lhs != rhs:
                        return (
                            f"a={_mono_name(n, monos[ai][0])} b={_mono_name(n, monos[bi][0])} "
                            f"c={_mono_name(n, monos[ci][0])} order {m}"
                        )
    return None


_WORKER_STATE: dict = {}


def _assoc_init(star: StarProduct, monos) -> None:
    _WORKER_STATE["star"] = star
    _WORKER_STATE["monos"] = monos


def _assoc_task(chunk) -> Optional[str]:
    return _assoc_scan(_WORKER_STATE["star"], _WORKER_STATE["monos"], chunk)


def _assoc_parallel(star: StarProduct, monos, threads: int) -> Optional[str]:
    from concurrent.futures import ProcessPoolExecutor

    indices = list(range(len(monos)))
    chunks = [indices[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads, initializer=_assoc_init, initargs=(star, monos)) as pool:
        results = list(pool.map(_assoc_task, chunks))
    # Report order-independent: pick the witness of the lowest-indexed chunk.
    for r in results:
        if r is not None:
            return r
    return None


def flat_chart(dim: int, order: int) -> Chart:
    """The flat chart: u_k = w_k, v_l = z_l, metric identity."""
    u0 = [RationalFunction.variable(dim, dim + k) for k in range(dim)]
    v0 = [RationalFunction.variable(dim, k) for k in range(dim)]
    return Chart(dim, order, [u0], [v0])
