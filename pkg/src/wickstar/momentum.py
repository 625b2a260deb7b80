"""Quantum Hamiltonians, the scalar obstruction cocycle, momentum mappings,
strong invariance, and the Berezin-Toeplitz construction.

The pipeline: a quantum Hamiltonian J solves d J_xi = i_{X_xi} K order by
order (rational primitives); the obstruction lam(xi, eta) = K(X_xi, X_eta)
- J([xi, eta]) is scalar-valued, closed, and its class decides whether some
constant shift tau turns J into an equivariant J - tau.  Every claim is
re-verified on the product itself: the commutator realization on all
monomials, and the equivariance identity per basis pair and order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .chart import Chart
from .errors import InternalConsistencyError, ValidationError
from .fields import VectorField
from .forms import Form
from .lie import CoboundaryResult, LieAction, apply_d2, solve_coboundary, validate_action
from .ratfunc import RationalFunction
from .scalars import Scalar
from .series import Series
from .star import CertificateReport, StarProduct, _mono_name, _monomials
from .symmetry import PrimitiveAnsatz, check_holomorphy, find_primitive

# Ratio between the curvature-trace Ricci form and the (1,1)-form built from
# d_w(d_z det g / det g); self-checked against the trace route whenever the
# Berezin-Toeplitz chart is emitted.
RICCI_DET_RATIO = Scalar(0, Fraction(1, 2))


def require_invariance_conditions(chart: Chart, action: LieAction, order: int) -> None:
    """Precondition for the momentum pipeline: every field satisfies the
    closed-form derivation conditions (holomorphy and invariant form)."""
    kform = chart.karabegov_form().truncate(order)
    for i, x in enumerate(action.fields):
        if not check_holomorphy(x):
            raise ValidationError(f"field {action.names[i]} does not preserve the complex structure")
        for s in range(order + 1):
            if not kform[s].lie(x).is_zero():
                raise ValidationError(
                    f"field {action.names[i]} does not preserve the characterizing form at order {s}"
                )


@dataclass
class HamiltonianResult:
    status: str  # "ok" or "not_found"
    j: Optional[List[Series]]
    failing: Optional[Tuple[str, int]] = None  # (basis name, order)


def quantum_hamiltonian(
    chart: Chart,
    action: LieAction,
    order: Optional[int] = None,
    ansatz: Optional[PrimitiveAnsatz] = None,
) -> HamiltonianResult:
    """Per basis element and order, a rational primitive of i_{X_xi} K.

    NOT_FOUND reports the first (xi, order) whose contraction has no
    primitive in the ansatz space; this is inconclusive, not a proof.
    """
    order = chart.order if order is None else order
    require_invariance_conditions(chart, action, order)
    kform = chart.karabegov_form().truncate(order)
    out: List[Series] = []
    for i, x in enumerate(action.fields):
        coeffs = []
        for s in range(order + 1):
            contraction = kform[s].interior(x)
            a_s = find_primitive(contraction, ansatz)
            if a_s is None:
                return HamiltonianResult("not_found", None, (action.names[i], s))
            coeffs.append(a_s)
        out.append(Series(coeffs))
    return HamiltonianResult("ok", out)


def verify_quantum_hamiltonian(
    star: StarProduct, action: LieAction, j: List[Series], dmax: Optional[int] = None
) -> CertificateReport:
    """-X_xi(b) = (1/nu) ad(J_xi)(b) on every monomial b, for every xi."""
    if star.order < 1:
        raise ValueError("quantum Hamiltonian certification needs order at least 1")
    dmax = star.order if dmax is None else dmax
    n = star.dim
    cases = 0
    for i, x in enumerate(action.fields):
        j_i = j[i].truncate(star.order)
        for exps, p in _monomials(n, dmax):
            cases += 1
            b = Series.constant(RationalFunction.from_poly(p), star.order)
            commutator = star.ad(j_i, b)
            if not commutator[0].is_zero():
                return CertificateReport(
                    "quantum-hamiltonian", False, cases,
                    f"xi={action.names[i]} b={_mono_name(n, exps)} (order-0 commutator)",
                )
            realized = commutator.shift_down(1)
            expected = Series.constant(-x.apply(b[0]), star.order - 1)
            if realized != expected:
                return CertificateReport(
                    "quantum-hamiltonian", False, cases,
                    f"xi={action.names[i]} b={_mono_name(n, exps)}",
                )
    return CertificateReport("quantum-hamiltonian", True, cases)


def lambda_cocycle(
    chart: Chart, action: LieAction, j: List[Series], order: Optional[int] = None
) -> Dict[Tuple[int, int], Series]:
    """lam(xi, eta) = K(X_xi, X_eta) - J([xi, eta]), as scalar series.

    Asserts that every value is constant at every order and that the
    degree-2 cocycle identity holds; both are structural claims about the
    construction, so a failure raises.
    """
    order = chart.order if order is None else order
    kform = chart.karabegov_form().truncate(order)
    out: Dict[Tuple[int, int], Series] = {}
    for a, b in action.pairs():
        xa, xb = action.fields[a], action.fields[b]
        values = []
        for s in range(order + 1):
            val = kform[s].evaluate(xa, xb)
            j_br = action.apply_on_bracket(j, a, b)
            coeff = val - j_br[s] if s <= j_br.order else val
            const = coeff.constant_value()
            if const is None:
                raise InternalConsistencyError(
                    f"lambda({action.names[a]},{action.names[b]}) is not constant at order {s}"
                )
            values.append(const)
        out[(a, b)] = Series(values)
    if out:
        for triple, series in apply_d2(action, out).items():
            if not series.is_zero():
                raise InternalConsistencyError(f"lambda fails the cocycle identity at {triple}")
    return out


def verify_equivariance(
    star: StarProduct, action: LieAction, j: List[Series]
) -> CertificateReport:
    """(1/nu)(J_xi * J_eta - J_eta * J_xi) = J([xi, eta]) per pair and order."""
    cases = 0
    for a, b in action.pairs():
        cases += 1
        commutator = star.ad(j[a].truncate(star.order), j[b].truncate(star.order))
        if not commutator[0].is_zero():
            return CertificateReport(
                "equivariance", False, cases,
                f"({action.names[a]},{action.names[b]}): order-0 commutator nonzero",
            )
        lhs = commutator.shift_down(1)
        rhs = action.apply_on_bracket(j, a, b).truncate(star.order - 1)
        if lhs != rhs:
            return CertificateReport(
                "equivariance", False, cases, f"({action.names[a]},{action.names[b]})"
            )
    return CertificateReport("equivariance", True, cases)


@dataclass
class MomentumResult:
    status: str  # "ok", "not_found", "obstructed"
    stage: str
    j_hamiltonian: Optional[List[Series]] = None
    j_momentum: Optional[List[Series]] = None
    tau: Optional[List[Series]] = None
    lam: Optional[Dict[Tuple[int, int], Series]] = None
    h1: Optional[int] = None
    h2: Optional[int] = None
    unique: bool = False
    failing: Optional[Tuple[str, int]] = None
    reports: List[CertificateReport] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def momentum_map(
    chart: Chart,
    action: LieAction,
    order: Optional[int] = None,
    ansatz: Optional[PrimitiveAnsatz] = None,
    dmax: Optional[int] = None,
    star: Optional[StarProduct] = None,
) -> MomentumResult:
    """Full pipeline: Hamiltonian, cocycle, coboundary, final verification."""
    order = chart.order if order is None else order
    report = validate_action(action)
    if not report.ok:
        raise ValidationError(
            "invalid action: " + "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        )
    ham = quantum_hamiltonian(chart, action, order, ansatz)
    if ham.status != "ok":
        return MomentumResult("not_found", "quantum_hamiltonian", failing=ham.failing)
    star = star or StarProduct(chart, order)
    reports = [verify_quantum_hamiltonian(star, action, ham.j, dmax)]
    if not reports[-1].ok:
        raise InternalConsistencyError(
            f"constructed quantum Hamiltonian fails its certificate: {reports[-1].witness}"
        )
    lam = lambda_cocycle(chart, action, ham.j, order)
    cob = solve_coboundary(action, lam, order)
    if cob.status == "obstructed":
        return MomentumResult(
            "obstructed", "solve_coboundary",
            j_hamiltonian=ham.j, lam=lam, h1=cob.h1, h2=cob.h2, reports=reports,
        )
    j_tau = [
        ham.j[i] - Series([RationalFunction.const(chart.dim, c) for c in cob.tau[i].coeffs])
        for i in range(action.m)
    ]
    reports.append(verify_equivariance(star, action, j_tau))
    if not reports[-1].ok:
        raise InternalConsistencyError(
            f"momentum mapping fails equivariance after correction: {reports[-1].witness}"
        )
    return MomentumResult(
        "ok", "complete",
        j_hamiltonian=ham.j, j_momentum=j_tau, tau=cob.tau, lam=lam,
        h1=cob.h1, h2=cob.h2, unique=cob.unique, reports=reports,
    )


# -- strong invariance -------------------------------------------------------------


@dataclass
class StrongInvarianceReport:
    classical_hamiltonian_ok: bool
    classical_equivariant_ok: bool
    strongly_invariant: bool
    witness: Optional[str] = None
    certification: Optional[CertificateReport] = None

    @property
    def ok(self) -> bool:
        return self.strongly_invariant


def check_strong_invariance(
    chart: Chart,
    action: LieAction,
    j0: List[RationalFunction],
    star: Optional[StarProduct] = None,
    dmax: Optional[int] = None,
) -> StrongInvarianceReport:
    """i_{X_xi}(K - omega) = 0 for all xi; when it holds, certify J0 itself
    as a quantum Hamiltonian on the product.

    The order-0 facts about J0 (Hamiltonian property, equivariance) are
    reported but do not gate the criterion; the flat chart is strongly
    invariant for any invariant action, equivariant J0 or not.
    """
    order = chart.order
    omega = chart.omega()
    ham_ok = all(
        Form.function(j0[i]).d() == omega.interior(action.fields[i]) for i in range(action.m)
    )
    equi_ok = True
    for a, b in action.pairs():
        lhs = omega.evaluate(action.fields[a], action.fields[b])
        rhs_series = action.apply_on_bracket(
            [Series.constant(f, 0) for f in j0], a, b
        )
        if lhs != rhs_series[0]:
            equi_ok = False
            break
    kform = chart.karabegov_form()
    strongly = True
    witness = None
    for i, x in enumerate(action.fields):
        for s in range(1, order + 1):
            if not kform[s].interior(x).is_zero():
                strongly = False
                witness = f"xi={action.names[i]} order={s}"
                break
        if not strongly:
            break
    certification = None
    if strongly:
        star = star or StarProduct(chart)
        j_series = [Series.constant(f, star.order) for f in j0]
        certification = verify_quantum_hamiltonian(star, action, j_series, dmax)
    return StrongInvarianceReport(ham_ok, equi_ok, strongly, witness, certification)


def verify_momentum_decomposition(
    chart: Chart, action: LieAction, j0: List[RationalFunction], j: List[Series]
) -> CertificateReport:
    """The higher-order part J+ = J - J0 matches the deformed part of the
    form: i_{X_xi}(K - omega) = d J+_xi and
    (K - omega)(X_xi, X_eta) = -X_xi(J+_eta) + X_eta(J+_xi) - J+([xi, eta]),
    exactly per order."""
    order = min(s.order for s in j) if j else chart.order
    kform = chart.karabegov_form().truncate(order)
    omega = chart.omega()
    jplus = [j[i] - Series.constant(j0[i], order) for i in range(action.m)]
    cases = 0
    for i, x in enumerate(action.fields):
        for s in range(order + 1):
            cases += 1
            kminus = kform[s] - omega if s == 0 else kform[s]
            lhs = kminus.interior(x) if not kminus.is_zero() else Form.zero(chart.dim)
            if Form.function(jplus[i][s]).d() != lhs:
                return CertificateReport(
                    "momentum-decomposition", False, cases,
                    f"dJ+ mismatch at xi={action.names[i]} order {s}",
                )
    for a, b in action.pairs():
        xa, xb = action.fields[a], action.fields[b]
        jp_br = action.apply_on_bracket(jplus, a, b)
        for s in range(order + 1):
            cases += 1
            kminus = kform[s] - omega if s == 0 else kform[s]
            lhs = kminus.evaluate(xa, xb)
            rhs = -xa.apply(jplus[b][s]) + xb.apply(jplus[a][s]) - jp_br[s]
            if lhs != rhs:
                return CertificateReport(
                    "momentum-decomposition", False, cases,
                    f"pairing mismatch at ({action.names[a]},{action.names[b]}) order {s}",
                )
    return CertificateReport("momentum-decomposition", True, cases)


# -- the global-potential momentum formula ---------------------------------------------


@dataclass
class PotentialMomentumResult:
    j: List[Series]
    invariance_ok: bool
    primitive_ok: bool
    lambda_zero: bool
    failing: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.invariance_ok and self.primitive_ok and self.lambda_zero


def potential_momentum(chart: Chart, action: LieAction) -> PotentialMomentumResult:
    """J_xi = (chi^k u_k - chibar^l vbar_l)/2 from stored derivatives only.

    Requires v data and the derivative-level invariance
    chi^k u_k + chibar^l vbar_l = 0 per order; verifies d J_xi = i_X K and
    that the obstruction cocycle vanishes identically.
    """
    if chart.v is None:
        raise ValidationError("potential momentum needs v data on the chart")
    n = chart.dim
    order = chart.order
    half = Scalar(Fraction(1, 2))
    js: List[Series] = []
    invariance_ok = True
    failing = None
    for idx, x in enumerate(action.fields):
        coeffs = []
        for s in range(order + 1):
            pairing_sum = RationalFunction.zero(n)
            pairing_diff = RationalFunction.zero(n)
            for k in range(n):
                zu = x.hol[k] * chart.u[s][k]
                wv = x.antihol[k] * chart.v[s][k]
                pairing_sum = pairing_sum + zu + wv
                pairing_diff = pairing_diff + zu - wv
            if not pairing_sum.is_zero():
                invariance_ok = False
                failing = f"xi={action.names[idx]} order={s}: chi.u + chibar.v != 0"
            coeffs.append(pairing_diff.scale(half))
        js.append(Series(coeffs))
    kform = chart.karabegov_form()
    primitive_ok = True
    for i, x in enumerate(action.fields):
        for s in range(order + 1):
            if Form.function(js[i][s]).d() != kform[s].interior(x):
                primitive_ok = False
                failing = failing or f"xi={action.names[i]} order={s}: dJ != i_X K"
    lam_zero = True
    if primitive_ok and invariance_ok:
        lam = lambda_cocycle(chart, action, js, order)
        lam_zero = all(series.is_zero() for series in lam.values())
    return PotentialMomentumResult(js, invariance_ok, primitive_ok, lam_zero, failing)


# -- Berezin-Toeplitz ------------------------------------------------------------------


def berezin_toeplitz(chart: Chart) -> Chart:
    """The chart whose form is omega + (2 nu / i) rho, rho the Ricci form.

    The order-1 correction is u^(1)_k = (2/i) * lam0 * d_{z^k}(det g)/det g;
    the emitted data is verified against the curvature-trace Ricci form, so
    a wrong lam0 cannot survive.
    """
    chart.require_valid()
    if chart.has_corrections():
        raise ValidationError("Berezin-Toeplitz construction expects an uncorrected chart")
    n = chart.dim
    m = chart.metric()
    two_over_i = Scalar(0, -2)
    factor = two_over_i * RICCI_DET_RATIO
    u1 = [(m.detg.diff(k) / m.detg).scale(factor) for k in range(n)]
    rho = chart.ricci_form()
    expected = rho.scale(two_over_i)
    emitted = Form.one_one(n, [[u1[k].diff(n + l) for l in range(n)] for k in range(n)])
    if emitted != expected:
        raise InternalConsistencyError(
            "Berezin-Toeplitz correction disagrees with the curvature-trace Ricci form"
        )
    return Chart(n, chart.order, [list(chart.u[0]), u1])


@dataclass
class BTMomentumResult:
    status: str  # "ok" or "no_classical"
    bt_chart: Optional[Chart] = None
    j0: Optional[List[RationalFunction]] = None
    j_div: Optional[List[RationalFunction]] = None
    j: Optional[List[Series]] = None
    contraction_ok: bool = False
    pairing_ok: bool = False
    certification: Optional[CertificateReport] = None
    equivariance: Optional[CertificateReport] = None
    failing: Optional[str] = None

    @property
    def ok(self) -> bool:
        return (
            self.status == "ok"
            and self.contraction_ok
            and self.pairing_ok
            and self.certification is not None
            and self.certification.ok
        )


def hamiltonian_data(
    chart: Chart, action: LieAction, ansatz: Optional[PrimitiveAnsatz] = None
) -> Optional[List[RationalFunction]]:
    """Primitives of i_{X_xi} omega per basis element (no equivariance fix)."""
    omega = chart.omega()
    out = []
    for x in action.fields:
        a = find_primitive(omega.interior(x), ansatz)
        if a is None:
            return None
        out.append(a)
    return out


def classical_momentum(
    chart: Chart, action: LieAction, ansatz: Optional[PrimitiveAnsatz] = None
) -> Optional[List[RationalFunction]]:
    """An equivariant classical momentum mapping for omega, or None.

    Primitives of i_{X_xi} omega are corrected by a constant coboundary so
    that omega(X_xi, X_eta) = J0([xi, eta]); None when either step fails.
    """
    omega = chart.omega()
    j0 = hamiltonian_data(chart, action, ansatz)
    if j0 is None:
        return None
    lam0: Dict[Tuple[int, int], Series] = {}
    for a, b in action.pairs():
        val = omega.evaluate(action.fields[a], action.fields[b])
        br = action.apply_on_bracket([Series.constant(f, 0) for f in j0], a, b)
        diff = val - br[0]
        const = diff.constant_value()
        if const is None:
            raise InternalConsistencyError("classical obstruction is not constant")
        lam0[(a, b)] = Series([const])
    cob = solve_coboundary(action, lam0, 0)
    if cob.status != "solved":
        return None
    return [
        j0[i] - RationalFunction.const(chart.dim, cob.tau[i][0]) for i in range(action.m)
    ]


def bt_momentum(
    chart: Chart,
    action: LieAction,
    order: Optional[int] = None,
    ansatz: Optional[PrimitiveAnsatz] = None,
    dmax: Optional[int] = None,
) -> BTMomentumResult:
    """J = J0 + (2 nu / i) j with j(xi) = (1/4) div(I X_xi), fully verified.

    Checks the two geometric identities i_{X_xi} rho = d j(xi) and
    rho(X_xi, X_eta) = j([xi, eta]) exactly, then certifies J as a quantum
    Hamiltonian (and momentum mapping) for the Berezin-Toeplitz product.
    """
    order = chart.order if order is None else order
    report = validate_action(action)
    if not report.ok:
        raise ValidationError(
            "invalid action: " + "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        )
    require_invariance_conditions(chart, action, 0)
    j0 = classical_momentum(chart, action, ansatz)
    if j0 is None:
        return BTMomentumResult("no_classical", failing="no equivariant classical momentum mapping")
    quarter = Scalar(Fraction(1, 4))
    jdiv = [
        chart.covariant_div(x.complex_structure()).scale(quarter) for x in action.fields
    ]
    rho = chart.ricci_form()
    contraction_ok = all(
        rho.interior(action.fields[i]) == Form.function(jdiv[i]).d() for i in range(action.m)
    )
    pairing_ok = True
    for a, b in action.pairs():
        val = rho.evaluate(action.fields[a], action.fields[b])
        br = action.apply_on_bracket([Series.constant(f, 0) for f in jdiv], a, b)
        if val != br[0]:
            pairing_ok = False
            break
    bt = berezin_toeplitz(chart)
    bt = Chart(bt.dim, order, [list(r) for r in bt.u])
    star = StarProduct(bt, order)
    two_over_i = Scalar(0, -2)
    j = []
    zero = RationalFunction.zero(chart.dim)
    for i in range(action.m):
        coeffs = [j0[i], jdiv[i].scale(two_over_i)] + [zero] * (order - 1)
        j.append(Series(coeffs[: order + 1]))
    certification = verify_quantum_hamiltonian(star, action, j, dmax)
    equivariance = verify_equivariance(star, action, j)
    return BTMomentumResult(
        "ok", bt, j0, jdiv, j, contraction_ok, pairing_ok, certification, equivariance
    )
