"""Invariance certificates: derivations, automorphisms, and quasi-inner fields.

A vector field preserves the complex structure iff its holomorphic
components are holomorphic and its anti-holomorphic ones anti-holomorphic
(2n^2 exact derivative conditions); it is a derivation of the product iff in
addition the Lie derivative of the characterizing form vanishes at every
order.  Both conditions are evaluated exactly, and independently of them a
complete monomial-level certificate re-checks the derivation/automorphism
property on the product itself; the two verdicts must agree.

Quasi-inner realization: a derivation X equals -(1/nu) ad(a) exactly when
d a = i_X K order by order.  Primitives of closed rational one-forms are
searched in a bounded ansatz (polynomial numerator over powers of the
denominators occurring in the form); NOT_FOUND means no primitive exists in
the ansatz space, never a nonexistence proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import linsolve, multiindex as mi
from .chart import Chart
from .errors import InternalConsistencyError, NotClosedError
from .fields import ChartMap, VectorField
from .forms import Form
from .poly import Polynomial
from .ratfunc import RationalFunction
from .scalars import Scalar
from .series import Series
from .star import CertificateReport, StarProduct, _DerivCache, _mono_name, _monomials


def check_holomorphy(x: VectorField) -> bool:
    """Lie_X I = 0: exact test of the 2n^2 derivative conditions."""
    n = x.dim
    for k in range(n):
        for l in range(n):
            if not x.hol[k].diff(n + l).is_zero():
                return False
            if not x.antihol[l].diff(k).is_zero():
                return False
    return True


@dataclass
class InvarianceReport:
    """Verdict of the derivation test for one (chart, field) pair."""

    holomorphy_ok: bool
    lie_form_zero: Tuple[bool, ...]  # one flag per deformation order
    derivation_certified: bool
    cases: int
    witness: Optional[str] = None

    @property
    def conditions_ok(self) -> bool:
        return self.holomorphy_ok and all(self.lie_form_zero)

    @property
    def ok(self) -> bool:
        return self.derivation_certified


def check_derivation(
    chart: Chart, x: VectorField, dmax: Optional[int] = None, star: Optional[StarProduct] = None
) -> InvarianceReport:
    """Decide whether X is a derivation, twice over.

    Evaluates the two closed-form conditions (holomorphy and the vanishing
    Lie derivative of the characterizing form at every order), then runs the
    complete monomial certificate X(a*b) = X(a)*b + a*X(b).  The independent
    routes must agree; disagreement raises.
    """
    star = star or StarProduct(chart)
    dmax = star.order if dmax is None else dmax
    hol_ok = check_holomorphy(x)
    kform = chart.karabegov_form().truncate(star.order)
    lie_flags = tuple(kform[s].lie(x).is_zero() for s in range(star.order + 1))

    n = chart.dim
    certified = True
    witness = None
    cases = 0
    monos = _monomials(n, dmax)
    rfs = [RationalFunction.from_poly(p) for _, p in monos]
    for i, a in enumerate(rfs):
        xa = Series.constant(x.apply(a), star.order)
        a_series = Series.constant(a, star.order)
        for j, b in enumerate(rfs):
            cases += 1
            ab = star.star_rf(a, b)
            lhs = ab.map(x.apply)
            rhs = star.star(xa, Series.constant(b, star.order)) + star.star(
                a_series, Series.constant(x.apply(b), star.order)
            )
            if lhs != rhs:
                certified = False
                witness = f"a={_mono_name(n, monos[i][0])} b={_mono_name(n, monos[j][0])}"
                break
        if not certified:
            break
    report = InvarianceReport(hol_ok, lie_flags, certified, cases, witness)
    if report.conditions_ok != report.derivation_certified:
        raise InternalConsistencyError(
            "derivation certificate disagrees with the invariance conditions"
        )
    return report


@dataclass
class AutomorphismReport:
    pullback_form_equal: Tuple[bool, ...]
    automorphism_certified: bool
    cases: int
    witness: Optional[str] = None

    @property
    def conditions_ok(self) -> bool:
        return all(self.pullback_form_equal)

    @property
    def ok(self) -> bool:
        return self.automorphism_certified


def check_automorphism(
    chart: Chart, phi: ChartMap, dmax: Optional[int] = None, star: Optional[StarProduct] = None
) -> AutomorphismReport:
    """Decide whether the pull-back along a holomorphic chart map is an
    automorphism: the map preserves the complex structure by construction,
    so the closed-form condition is pullback-invariance of the
    characterizing form per order; the monomial certificate re-checks
    phi*(a*b) = phi*a * phi*b independently."""
    star = star or StarProduct(chart)
    dmax = star.order if dmax is None else dmax
    kform = chart.karabegov_form().truncate(star.order)
    flags = tuple(phi.pullback(kform[s]) == kform[s] for s in range(star.order + 1))

    n = chart.dim
    certified = True
    witness = None
    cases = 0
    monos = _monomials(n, dmax)
    rfs = [RationalFunction.from_poly(p) for _, p in monos]
    pulled = [phi.pullback(f) for f in rfs]
    for i, a in enumerate(rfs):
        for j, b in enumerate(rfs):
            cases += 1
            lhs = star.star_rf(a, b).map(phi.pullback)
            rhs = star.star_rf(pulled[i], pulled[j])
            if lhs != rhs:
                certified = False
                witness = f"a={_mono_name(n, monos[i][0])} b={_mono_name(n, monos[j][0])}"
                break
        if not certified:
            break
    report = AutomorphismReport(flags, certified, cases, witness)
    if report.conditions_ok != report.automorphism_certified:
        raise InternalConsistencyError(
            "automorphism certificate disagrees with the pullback condition"
        )
    return report


# -- rational primitives -------------------------------------------------------


@dataclass
class PrimitiveAnsatz:
    """Search space for rational primitives.

    The candidate is a polynomial numerator of total degree at most
    ``degree`` over the product of the distinct denominators occurring in
    the one-form, raised to powers 0..``power_bound``.  ``degree`` of None
    picks (max numerator degree of the form) + degree_margin, growing with
    the denominator power so the intrinsic numerator room stays constant.
    """

    degree: Optional[int] = None
    power_bound: int = 2
    degree_margin: int = 2
    denominator_hint: Optional[Polynomial] = None


def find_primitive(form: Form, ansatz: PrimitiveAnsatz = None) -> Optional[RationalFunction]:
    """Exact a with d a = form, or None when the ansatz space has none.

    The form must be a closed one-form; non-closed input raises.
    """
    ansatz = ansatz or PrimitiveAnsatz()
    n = form.dim
    if not all(len(z) + len(w) == 1 for z, w in form.terms):
        raise ValueError("primitive search expects a one-form")
    if not form.d().is_zero():
        raise NotClosedError("not closed")
    if form.is_zero():
        return RationalFunction.zero(n)

    coeffs = [form.coefficient((k,), ()) for k in range(n)] + [
        form.coefficient((), (l,)) for l in range(n)
    ]
    bases: List[Polynomial] = []
    if ansatz.denominator_hint is not None:
        bases = [ansatz.denominator_hint]
    else:
        for c in coeffs:
            if not c.den.is_one() and all(c.den != b for b in bases):
                bases.append(c.den)
    den_base = Polynomial.one(n)
    for b in bases:
        den_base = den_base * b
    max_num_deg = max((c.num.total_degree() for c in coeffs), default=0)

    for power in range(ansatz.power_bound + 1):
        den = den_base ** power
        if ansatz.degree is not None:
            degree = ansatz.degree
        else:
            degree = max_num_deg + ansatz.degree_margin + power * den_base.total_degree()
        candidate = _solve_primitive(coeffs, den, degree, n)
        if candidate is not None:
            check = Form.function(candidate).d()
            if check != form:
                raise InternalConsistencyError("primitive solver returned a non-primitive")
            return candidate
        if den_base.is_one():
            break
    return None


def _solve_primitive(
    coeffs: List[RationalFunction], den: Polynomial, degree: int, n: int
) -> Optional[RationalFunction]:
    """Solve d(num/den) = form for the numerator coefficients, exactly."""
    monomials = list(mi.up_to_total(2 * n, degree))
    col_of = {m: j for j, m in enumerate(monomials)}
    rows: List[List[Scalar]] = []
    rhs: List[List[Scalar]] = []
    zero = Scalar(0)
    den_sq = den * den
    for var in range(2 * n):
        target = coeffs[var]
        dden = den.diff(var)
        # (num' den - num den') * target_den = target_num * den^2, matched
        # coefficientwise as polynomials in the chart variables.
        lhs_rows: dict = {}
        for m in monomials:
            p = Polynomial.monomial(n, m)
            contrib = (p.diff(var) * den - p * dden) * target.den
            for exps, c in contrib.terms.items():
                row_map = lhs_rows.setdefault(exps, {})
                j = col_of[m]
                row_map[j] = row_map.get(j, zero) + c
        rhs_poly = target.num * den_sq
        exps_set = set(lhs_rows) | set(rhs_poly.terms)
        for exps in sorted(exps_set):
            row = [zero] * len(monomials)
            for j, c in lhs_rows.get(exps, {}).items():
                row[j] = c
            rows.append(row)
            rhs.append([rhs_poly.terms.get(exps, zero)])
    sol = linsolve.solve(rows, rhs)
    if sol.status == linsolve.INCONSISTENT:
        return None
    vec = sol.vectors[0]
    terms = {m: c for m, c in zip(monomials, vec) if not c.is_zero()}
    num = Polynomial(n, terms)
    return RationalFunction(num, den)


# -- quasi-inner realization ------------------------------------------------------


@dataclass
class QuasiInnerReport:
    primitive_ok: Tuple[bool, ...]
    realization_ok: bool
    hamiltonian_matches: bool
    cases: int
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return all(self.primitive_ok) and self.realization_ok and self.hamiltonian_matches


def check_quasi_inner(
    chart: Chart,
    x: VectorField,
    a: Series,
    dmax: Optional[int] = None,
    star: Optional[StarProduct] = None,
) -> QuasiInnerReport:
    """Verify d a = i_X K per order, the realization X = -(1/nu) ad(a) on all
    monomials, and that X is the Hamiltonian field of the order-0 part."""
    star = star or StarProduct(chart)
    if star.order < 1:
        raise ValueError("quasi-inner check needs truncation order at least 1")
    dmax = star.order if dmax is None else dmax
    n = chart.dim
    kform = chart.karabegov_form().truncate(star.order)
    contraction = kform.map(lambda f: f.interior(x))
    primitive_flags = tuple(
        Form.function(a[s]).d() == contraction[s] for s in range(min(a.order, star.order) + 1)
    )

    witness = None
    realization = True
    cases = 0
    a_trunc = a.truncate(star.order)
    monos = _monomials(n, dmax)
    for exps, p in monos:
        cases += 1
        b = RationalFunction.from_poly(p)
        commutator = star.ad(a_trunc, Series.constant(b, star.order))
        if not commutator[0].is_zero():
            realization = False
            witness = f"b={_mono_name(n, exps)} (commutator has an order-0 part)"
            break
        realized = -commutator.shift_down(1)
        expected = Series.constant(x.apply(b), star.order - 1)
        if realized != expected:
            realization = False
            witness = f"b={_mono_name(n, exps)}"
            break

    ham = chart.hamiltonian_field(a[0])
    ham_ok = ham == x
    return QuasiInnerReport(primitive_flags, realization, ham_ok, cases, witness)


def hamiltonian_vector_field(chart: Chart, a0: RationalFunction) -> VectorField:
    """The unique X with i_X omega = d a0 (inverse-metric solve)."""
    return chart.hamiltonian_field(a0)


def quasi_inner_primitive(
    chart: Chart, x: VectorField, order: Optional[int] = None,
    ansatz: PrimitiveAnsatz = None, seed: Optional[RationalFunction] = None,
) -> Optional[Series]:
    """Solve d a = i_X K order by order inside the ansatz space.

    ``seed`` optionally supplies the order-0 coefficient (re-verified, not
    trusted).  Returns None as soon as one order has no primitive in the
    ansatz space.
    """
    order = chart.order if order is None else order
    kform = chart.karabegov_form().truncate(order)
    out = []
    for s in range(order + 1):
        contraction = kform[s].interior(x)
        if s == 0 and seed is not None:
            if Form.function(seed).d() != contraction:
                return None
            out.append(seed)
            continue
        a_s = find_primitive(contraction, ansatz)
        if a_s is None:
            return None
        out.append(a_s)
    return Series(out)
