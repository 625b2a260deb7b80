"""Derivation/automorphism certificates, primitives, quasi-inner realization."""

import pytest
from hypothesis import given, settings

from wickstar import (
    ChartMap,
    Form,
    NotClosedError,
    PrimitiveAnsatz,
    StarProduct,
    check_automorphism,
    check_derivation,
    check_holomorphy,
    check_quasi_inner,
    find_primitive,
    hamiltonian_vector_field,
    parse,
    quasi_inner_primitive,
)

from conftest import chart_from, field_from
from test_exactnum import ratfuncs


def rf(text, dim=1):
    return parse(text, dim)


def test_holomorphy_cases(rotation):
    assert check_holomorphy(rotation)
    assert not check_holomorphy(field_from(["w1"], ["0"]))
    assert check_holomorphy(field_from(["1 + z1^2"], ["1 + w1^2"]))


def test_derivation_positive(fs, star_fs, rotation):
    report = check_derivation(fs, rotation, star=star_fs)
    assert report.holomorphy_ok
    assert all(report.lie_form_zero)
    assert report.derivation_certified


def test_derivation_negative_form(flat1, star_flat1):
    x = field_from(["z1^2"], ["0"])
    report = check_derivation(flat1, x, star=star_flat1)
    assert report.holomorphy_ok
    assert not all(report.lie_form_zero)
    assert not report.derivation_certified
    assert report.witness is not None


def test_derivation_negative_holomorphy(flat1, star_flat1):
    report = check_derivation(flat1, field_from(["w1"], ["0"]), star=star_flat1)
    assert not report.holomorphy_ok
    assert not report.derivation_certified


def test_derivation_zero_field(flat1, star_flat1):
    from wickstar import VectorField

    report = check_derivation(flat1, VectorField.zero(1), star=star_flat1)
    assert report.derivation_certified


def test_automorphism_translation_and_scaling(flat1, star_flat1):
    translation = ChartMap([rf("z1 + 1")], [rf("z1 - 1")])
    report = check_automorphism(flat1, translation, star=star_flat1)
    assert report.ok
    scaling = ChartMap([rf("2*z1")], [rf("z1/2")])
    report = check_automorphism(flat1, scaling, star=star_flat1)
    assert not report.ok and report.witness is not None


def test_automorphism_identity_and_composition(flat1, star_flat1):
    ident = ChartMap([rf("z1")], [rf("z1")])
    assert check_automorphism(flat1, ident, star=star_flat1).ok
    translation = ChartMap([rf("z1 + 1")], [rf("z1 - 1")])
    composed = translation.compose(translation)
    assert check_automorphism(flat1, composed, star=star_flat1).ok


def test_automorphism_mobius_on_study_chart(fs, star_fs):
    mobius = ChartMap([rf("1/z1")], [rf("1/z1")])
    assert check_automorphism(fs, mobius, star=star_fs).ok


# -- primitives -------------------------------------------------------------------


def test_primitive_rotation_flat(flat1, rotation):
    contraction = flat1.omega().interior(rotation)
    a = find_primitive(contraction)
    assert a is not None
    assert Form.function(a).d() == contraction
    # d(i z1 w1) matches the interior-product sign anchor.
    assert (a - rf("i*z1*w1")).is_constant()


def test_primitive_rotation_study(fs, rotation):
    contraction = fs.omega().interior(rotation)
    a = find_primitive(contraction)
    assert a is not None
    assert Form.function(a).d() == contraction
    assert (a - rf("-i/(1+z1*w1)")).is_constant()


def test_primitive_log_obstruction():
    form = Form(1, {((0,), ()): rf("1/z1"), ((), (0,)): rf("1/w1")})
    assert form.d().is_zero()
    assert find_primitive(form) is None


def test_primitive_rejects_nonclosed():
    form = Form(1, {((0,), ()): rf("w1")})
    with pytest.raises(NotClosedError):
        find_primitive(form)


def test_primitive_denominator_hint():
    target = rf("-i/(1+z1*w1)")
    form = Form.function(target).d()
    hint = parse("1+z1*w1", 1).num
    a = find_primitive(form, PrimitiveAnsatz(denominator_hint=hint, power_bound=1))
    assert a is not None and Form.function(a).d() == form


@settings(max_examples=20)
@given(ratfuncs())
def test_primitive_of_differential_is_identity(f):
    form = Form.function(f).d()
    # Allow enough denominator power: d squares the stored denominator.
    a = find_primitive(form, PrimitiveAnsatz(power_bound=2, degree_margin=3))
    assert a is not None
    assert Form.function(a).d() == form
    assert (a - f).is_constant()


# -- quasi-inner realization ---------------------------------------------------------


def test_quasi_inner_rotation_flat(flat1, star_flat1, rotation):
    a = quasi_inner_primitive(flat1, rotation)
    assert a is not None
    report = check_quasi_inner(flat1, rotation, a, star=star_flat1)
    assert report.ok


def test_quasi_inner_translation_flat(flat1, star_flat1):
    x = field_from(["1"], ["1"])
    a = quasi_inner_primitive(flat1, x, seed=rf("w1 - z1"))
    assert a is not None and a[0] == rf("w1 - z1")
    report = check_quasi_inner(flat1, x, a, star=star_flat1)
    assert report.ok


def test_quasi_inner_rotation_study(fs, star_fs, rotation):
    a = quasi_inner_primitive(fs, rotation)
    report = check_quasi_inner(fs, rotation, a, star=star_fs)
    assert report.ok
    assert hamiltonian_vector_field(fs, a[0]) == rotation


def test_quasi_inner_detects_bad_candidate(flat1, star_flat1, rotation):
    from wickstar import Series

    bad = Series.constant(rf("i*z1*w1 + z1"), 3)
    report = check_quasi_inner(flat1, rotation, bad, star=star_flat1)
    assert not report.primitive_ok[0]
    assert not report.ok


def test_quasi_inner_constant_shift_still_realizes(flat1, star_flat1, rotation):
    from wickstar import Series

    # Constants change neither the primitive equation nor the commutator.
    shifted = Series.constant(rf("i*z1*w1 + 7"), 3)
    report = check_quasi_inner(flat1, rotation, shifted, star=star_flat1)
    assert report.ok


def test_hamiltonian_vector_field_examples(flat1, fs):
    assert hamiltonian_vector_field(flat1, rf("i*z1*w1")) == field_from(["i*z1"], ["-i*w1"])
    assert hamiltonian_vector_field(flat1, rf("1")).is_zero()
    assert hamiltonian_vector_field(fs, rf("-i/(1+z1*w1)")) == field_from(
        ["i*z1"], ["-i*w1"]
    )
