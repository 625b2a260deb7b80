"""The product construction and its complete finite certificates."""

import copy

import pytest

from wickstar import (
    DiffOperator,
    RationalFunction,
    Series,
    StarProduct,
    flat_chart,
    parse,
    render_series,
)
from wickstar import multiindex as mi

from conftest import chart_from
from oracles import flat_wick_product, poisson_bracket_flat


def rf(text, dim=1):
    return parse(text, dim)


def const_series(text, order=3, dim=1):
    return Series.constant(parse(text, dim), order)


# -- defining examples, frozen against the closed-form oracle -----------------------


def test_flat_basic_products(star_flat1):
    zw = star_flat1.star_rf(rf("z1"), rf("w1"))
    assert render_series(zw) == "z1*w1 + v"
    assert star_flat1.star_rf(rf("w1"), rf("z1")) == Series.constant(rf("z1*w1"), 3)
    sq = star_flat1.star_rf(rf("z1^2"), rf("w1^2"))
    # Frozen expansion, re-derived by the oracle below.
    assert render_series(sq) == "z1^2*w1^2 + 4*z1*w1*v + 2*v^2"
    assert sq == flat_wick_product(rf("z1^2"), rf("w1^2"), 3)


def test_left_operator_unit_and_shape(star_flat1, star_fs):
    for product in (star_flat1, star_fs):
        ops = product.left_mult_operator(const_series("1", product.order))
        assert ops[0] == DiffOperator.multiplication(rf("1"))
        for t in range(1, product.order + 1):
            assert ops[t].is_zero()
    # L_{z1^2} on the flat chart: multiplication + 2 z1 d_w + d_w^2.
    ops = star_flat1.left_mult_operator(const_series("z1^2"))
    assert ops[0] == DiffOperator.multiplication(rf("z1^2"))
    assert ops[1] == DiffOperator(1, {((0,), (1,)): rf("2*z1")})
    assert ops[2] == DiffOperator(1, {((0,), (2,)): rf("1")})
    # Applying the operator series reproduces the product.
    b = rf("w1^2")
    applied = Series([op.apply(b) for op in ops])
    assert applied == star_flat1.star_rf(rf("z1^2"), b)


def test_ad_examples(star_flat1):
    got = star_flat1.ad(const_series("z1*w1"), const_series("z1"))
    # Oracle: expand both products with the closed-form flat product.
    oracle = flat_wick_product(rf("z1*w1"), rf("z1"), 3) - flat_wick_product(
        rf("z1"), rf("z1*w1"), 3
    )
    assert got == oracle
    assert render_series(got) == "-z1*v"
    assert star_flat1.ad(const_series("1"), const_series("w1^2 + z1")).is_zero()
    assert render_series(star_flat1.ad(const_series("z1"), const_series("w1"))) == "v"


def test_first_commutator_is_poisson_bracket(star_flat1):
    for a_text in ("z1", "z1*w1", "z1^2*w1", "w1^3"):
        for b_text in ("w1", "z1*w1^2", "z1^3"):
            a, b = rf(a_text), rf(b_text)
            commutator = star_flat1.ad(Series.constant(a, 3), Series.constant(b, 3))
            assert commutator[0].is_zero()
            assert commutator[1] == poisson_bracket_flat(a, b)


def test_flat_oracle_equivalence_c1():
    chart = flat_chart(1, 4)
    product = StarProduct(chart)
    monos = [rf(f"z1^{i}*w1^{j}") for i in range(5) for j in range(5)]
    for a in monos:
        for b in monos:
            assert product.star_rf(a, b) == flat_wick_product(a, b, 4)


def test_series_star_bilinearity(star_fs):
    a = Series([rf("z1"), rf("1"), rf("0"), rf("0")])
    b = Series([rf("w1"), rf("z1*w1"), rf("0"), rf("0")])
    direct = star_fs.star(a, b)
    expanded = (
        star_fs.star_rf(rf("z1"), rf("w1"))
        + star_fs.star_rf(rf("z1"), rf("z1*w1")).shift_up(1)
        + star_fs.star_rf(rf("1"), rf("w1")).shift_up(1)
        + star_fs.star_rf(rf("1"), rf("z1*w1")).shift_up(2)
    )
    assert direct == expanded


# -- certificates -----------------------------------------------------------------


def test_wick_property(star_flat1, star_fs):
    assert star_flat1.verify_wick_type(3).ok
    assert star_fs.verify_wick_type(3).ok


def test_defining_relation(star_flat1, star_fs):
    assert star_flat1.verify_defining_relation(3).ok
    assert star_fs.verify_defining_relation(3).ok


def test_defining_relation_nu_corrected(flat1_nu):
    product = StarProduct(flat1_nu)
    assert product.verify_defining_relation(3).ok
    # u = w(1 + v) forces z * w = zw + v/(1+v) = zw + v - v^2 + v^3 - ...
    zw = product.star_rf(rf("z1"), rf("w1"))
    assert render_series(zw) == "z1*w1 + v - v^2 + v^3"


def test_order_bound(star_flat1, star_fs):
    assert star_flat1.verify_order_bound().ok
    assert star_fs.verify_order_bound().ok


def test_associativity_flat(star_flat1):
    report = star_flat1.verify_associativity(3)
    assert report.ok and report.cases == 16 ** 3


def test_associativity_corrupted_coefficient_caught(flat1):
    product = StarProduct(flat1)
    corrupted = copy.deepcopy(product)
    key = ((1,), (1,))
    table = corrupted.coefficient_tables[2]
    table[key] = table.get(key, rf("0")) + rf("1")
    corrupted._sorted_tables = [sorted(t.items()) for t in corrupted.coefficient_tables]
    report = corrupted.verify_associativity(3)
    assert not report.ok
    assert report.witness is not None


def test_roundtrip_form_extraction(flat1, fs, hyperbolic, flat1_nu, flat2):
    for chart in (flat1, fs, hyperbolic, flat1_nu, flat2):
        product = StarProduct(chart)
        assert product.extract_karabegov() == chart.karabegov_form().truncate(product.order)


def test_extraction_detects_tampering(flat1):
    from wickstar import InternalConsistencyError

    product = StarProduct(flat1)
    product.coefficient_tables[1][((1,), (1,))] = rf("2")
    with pytest.raises(InternalConsistencyError):
        product.extract_karabegov()


def test_hyperbolic_product_certificates(hyperbolic):
    product = StarProduct(hyperbolic)
    assert product.verify_wick_type(3).ok
    assert product.verify_defining_relation(3).ok


def test_flat2_products_match_oracle(flat2):
    product = StarProduct(flat2)
    a = parse("z1*z2*w1", 2)
    b = parse("w1*w2", 2)
    assert product.star_rf(a, b) == flat_wick_product(a, b, 3)


def test_assoc_needs_dmax_at_least_order(star_flat1):
    with pytest.raises(ValueError):
        star_flat1.verify_associativity(1)


def test_parallel_sweep_matches_sequential(flat1, monkeypatch):
    product = StarProduct(flat1, order=2)
    sequential = product.verify_associativity(2)
    monkeypatch.setenv("WICK_THREADS", "2")
    parallel = product.verify_associativity(2)
    assert parallel.ok == sequential.ok and parallel.cases == sequential.cases
