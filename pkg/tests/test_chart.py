"""Chart validation and the derived geometry (metric, curvature, Ricci)."""

import pytest

from wickstar import Chart, Form, ValidationError, VectorField, parse
from wickstar.scalars import Scalar

from conftest import chart_from, field_from


def rf(text, dim=1):
    return parse(text, dim)


def det_log_form(chart) -> Form:
    """The (1,1)-form with coefficients d_w(d_z det g / det g): the
    determinant route to the Ricci form, up to one universal constant."""
    n = chart.dim
    m = chart.metric()
    coeffs = [
        [(m.detg.diff(k) / m.detg).diff(n + l) for l in range(n)] for k in range(n)
    ]
    return Form.one_one(n, coeffs)


def test_flat_chart_valid(flat1):
    report = flat1.validate()
    assert report.ok
    assert flat1.metric().g[0][0] == rf("1")


def test_study_chart_metric(fs):
    assert fs.validate().ok
    # Derived by differentiating u in the w direction.
    assert fs.metric().g[0][0] == rf("1/(1+z1*w1)^2")


def test_degenerate_chart_rejected():
    bad = chart_from([["w1", "0"]], dim=2, order=2)
    report = bad.validate()
    assert not report.ok
    assert any(c.name == "nondegeneracy" for c in report.failures())
    with pytest.raises(ValidationError):
        bad.require_valid()


def test_u_symmetry_violation_named():
    # d_z2 u_1 != d_z1 u_2 for u = (z2^2*w1, w2).
    bad = chart_from([["z2^2*w1", "w2"]], dim=2, order=1)
    report = bad.validate()
    assert not report.ok
    failure = report.failures()[0]
    assert failure.name == "u-symmetry" and "z" in failure.detail


def test_uv_compatibility_checked():
    bad = chart_from([["w1"]], [["2*z1"]])
    report = bad.validate()
    assert any(c.name == "uv-compatibility" for c in report.failures())


def test_metric_inverse_exact(fs, flat2):
    for chart in (fs, flat2):
        m = chart.metric()
        n = chart.dim
        for i in range(n):
            for j in range(n):
                acc = rf("0", n)
                for k in range(n):
                    acc = acc + m.g[i][k] * m.ginv[k][j]
                assert acc == (rf("1", n) if i == j else rf("0", n))


def test_karabegov_form_values(flat1, fs, flat1_nu):
    assert flat1.karabegov_form()[0] == Form.one_one(1, [[rf("1")]])
    assert fs.karabegov_form()[0] == Form.one_one(1, [[rf("1/(1+z1*w1)^2")]])
    knu = flat1_nu.karabegov_form()
    assert knu[0] == Form.one_one(1, [[rf("1")]])
    assert knu[1] == Form.one_one(1, [[rf("1")]])


def test_karabegov_form_closed_every_order(fs, flat1_nu, hyperbolic):
    for chart in (fs, flat1_nu, hyperbolic):
        kform = chart.karabegov_form()
        for s in range(chart.order + 1):
            assert kform[s].d().is_zero()
            assert kform[s].is_type(1, 1) or kform[s].is_zero()


def test_christoffels_flat_and_study(flat1, fs):
    gamma, gammabar = flat1.christoffels()
    assert gamma[0][0][0].is_zero() and gammabar[0][0][0].is_zero()
    gamma, gammabar = fs.christoffels()
    # g^{-1} d_z g on the study chart.
    assert gamma[0][0][0] == rf("-2*w1/(1+z1*w1)")
    assert gammabar[0][0][0] == rf("-2*z1/(1+z1*w1)")


def test_christoffel_symmetry_dim2():
    # A genuinely curved 2d chart: potential z1 w1 + z2 w2 + z1 z2 w1 w2.
    chart = chart_from(
        [["w1 + z2*w1*w2", "w2 + z1*w1*w2"]], dim=2, order=1
    )
    assert chart.validate().ok
    gamma, gammabar = chart.christoffels()
    n = 2
    for k in range(n):
        for l in range(n):
            for m in range(n):
                assert gamma[k][l][m] == gamma[l][k][m]
                assert gammabar[k][l][m] == gammabar[l][k][m]


def test_connection_compatible_with_metric(fs):
    # nabla g = 0: d_z g_{l q} = Gamma^m_{k l} g_{m q} (and mirrored).
    m = fs.metric()
    gamma, gammabar = fs.christoffels()
    n = fs.dim
    for k in range(n):
        for l in range(n):
            for q in range(n):
                lhs = m.g[l][q].diff(k)
                rhs = rf("0", n)
                for mm in range(n):
                    rhs = rhs + gamma[k][l][mm] * m.g[mm][q]
                assert lhs == rhs
                lhs_bar = m.g[q][l].diff(n + k)
                rhs_bar = rf("0", n)
                for mm in range(n):
                    rhs_bar = rhs_bar + gammabar[k][l][mm] * m.g[q][mm]
                assert lhs_bar == rhs_bar


def test_curvature_flat_vanishes(flat1, flat2):
    for chart in (flat1, flat2):
        mixed_hol, mixed_anti, holhol = chart.curvature()
        n = chart.dim
        for k in range(n):
            for l in range(n):
                for j in range(n):
                    for m in range(n):
                        assert mixed_hol[k][l][j][m].is_zero()
                        assert mixed_anti[k][l][j][m].is_zero()


def test_curvature_type_purity(fs):
    # R(Z,Z) = 0: the curvature is of type (1,1) for valid chart data.
    _, _, holhol = fs.curvature()
    assert all(f.is_zero() for a in holhol for b in a for c in b for f in c)


def test_ricci_flat_zero(flat1, flat2):
    assert flat1.ricci_form().is_zero()
    assert flat2.ricci_form().is_zero()


def test_ricci_determinant_identity_universal(fs, hyperbolic):
    """The trace route and the determinant route differ by one universal
    constant, derived on the study chart and re-checked on the disc."""
    rho_fs = fs.ricci_form()
    assert rho_fs.d().is_zero() and rho_fs.is_type(1, 1)
    base = det_log_form(fs)
    lam0 = rho_fs.coefficient((0,), (0,)) / base.coefficient((0,), (0,))
    lam0_value = lam0.constant_value()
    assert lam0_value is not None

    rho_h = hyperbolic.ricci_form()
    base_h = det_log_form(hyperbolic)
    assert rho_h == base_h.scale(lam0_value)
    # And on the study chart itself, across all components.
    assert rho_fs == base.scale(lam0_value)


def test_ricci_closed_contraction_for_invariant_fields(fs, rotation):
    rho = fs.ricci_form()
    assert rho.interior(rotation).d().is_zero()


def test_covariant_divergence(flat1, fs):
    assert flat1.covariant_div(field_from(["z1"], ["0"])) == rf("1")
    # Trace formula oracle on the study chart, rotation field:
    # div X = sum d(chi) + chi dlog(det g) and mirrored.
    x = field_from(["i*z1"], ["-i*w1"])
    m = fs.metric()
    expected = (
        rf("i")
        + rf("i*z1") * (m.detg.diff(0) / m.detg)
        + rf("-i")
        + rf("-i*w1") * (m.detg.diff(1) / m.detg)
    )
    assert fs.covariant_div(x) == expected


def test_hamiltonian_field(flat1, fs):
    assert flat1.hamiltonian_field(rf("i*z1*w1")) == field_from(["i*z1"], ["-i*w1"])
    assert flat1.hamiltonian_field(rf("1")).is_zero()
    assert fs.hamiltonian_field(rf("-i/(1+z1*w1)")) == field_from(["i*z1"], ["-i*w1"])
