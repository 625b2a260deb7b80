"""Scalar, polynomial, rational function, and series arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wickstar import Polynomial, RationalFunction, Scalar, Series, parse
from wickstar.poly import exact_div

# -- strategies ---------------------------------------------------------------

scalars = st.builds(
    Scalar,
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
)


def polynomials(dim=1, max_exp=2, max_terms=3):
    exps = st.tuples(*([st.integers(0, max_exp)] * (2 * dim)))
    return st.builds(
        lambda terms: Polynomial(dim, {e: c for e, c in terms.items() if not c.is_zero()}),
        st.dictionaries(exps, scalars, max_size=max_terms),
    )


def ratfuncs(dim=1):
    # Denominators 1 + (monomial) are never zero.
    nonzero_mono = st.tuples(*([st.integers(0, 2)] * (2 * dim))).filter(any)
    dens = st.builds(
        lambda e, c: Polynomial.one(dim) + Polynomial(dim, {e: c} if not c.is_zero() else {}),
        nonzero_mono,
        scalars,
    )
    return st.builds(RationalFunction, polynomials(dim), dens)


# -- scalars --------------------------------------------------------------------


def test_scalar_arithmetic():
    i = Scalar(0, 1)
    assert i * i == Scalar(-1)
    assert (Scalar(1, 2) * Scalar(3, -1)) == Scalar(5, 5)
    assert Scalar(1) / Scalar(0, 2) == Scalar(0, Fraction(-1, 2))
    assert Scalar(2, 3).conjugate() == Scalar(2, -3)
    assert (Scalar(1, 1) ** 4) == Scalar(-4)


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


@given(scalars, scalars, scalars)
def test_scalar_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


# -- polynomials ------------------------------------------------------------------


def test_polynomial_canonical_zero():
    p = parse("z1 + w1", 1).num
    q = parse("z1 + w1", 1).num
    assert (p - q).is_zero()
    assert Polynomial.zero(1).terms == {}


def test_exact_division_succeeds():
    num = parse("z1^2 - w1^2", 1).num
    den = parse("z1 - w1", 1).num
    q = exact_div(num, den)
    assert q is not None and q * den == num
    assert q == parse("z1 + w1", 1).num


def test_exact_division_fails_cleanly():
    assert exact_div(parse("z1 + 1", 1).num, parse("w1", 1).num) is None


@given(polynomials(), polynomials(), polynomials())
def test_polynomial_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


# -- rational functions ------------------------------------------------------------


def test_common_denominator_cancellation():
    a = parse("z1/(1+z1*w1)", 1)
    b = parse("z1*w1*z1/(1+z1*w1)", 1)
    assert a + b == parse("z1", 1)


def test_identity_multiplication():
    one = RationalFunction.one(1)
    b = parse("w1/(1+z1*w1)", 1)
    assert one * b == b


def test_difference_of_squares_quotient():
    # Cross-multiplication equality against the expansion (z1+w1)(z1-w1).
    got = parse("(z1^2 - w1^2)/(z1 - w1)", 1)
    expect = parse("z1 + w1", 1)
    assert got.num * expect.den == expect.num * got.den
    assert got == expect


def test_zero_divisor_errors():
    with pytest.raises(ZeroDivisionError, match="zero divisor"):
        parse("z1", 1) / RationalFunction.zero(1)


def test_quotient_rule_derivative():
    # d_w [w/(1+zw)] = 1/(1+zw)^2, checked by cross-multiplying against (1+zw)^2.
    f = parse("w1/(1+z1*w1)", 1)
    d = f.diff(1)
    den = parse("(1+z1*w1)^2", 1)
    assert d * den == RationalFunction.one(1)
    assert parse("w1", 1).diff(0).is_zero()
    assert parse("z1^2*w1", 1).diff(0) == parse("2*z1*w1", 1)


def test_substitution():
    zw = parse("z1*w1", 1)
    assert zw.substitute([parse("1/z1", 1), parse("1/w1", 1)]) == parse("1/(z1*w1)", 1)
    ident = [parse("z1", 1), parse("w1", 1)]
    f = parse("(z1+w1)/(1+z1*w1)", 1)
    assert f.substitute(ident) == f
    shifted = parse("z1*w1 + 1", 1).substitute([parse("z1+1", 1), parse("w1", 1)])
    # Direct expansion oracle: (z1+1)*w1 + 1.
    assert shifted == parse("z1*w1 + w1 + 1", 1)


def test_singular_substitution_detected():
    from wickstar import SingularSubstitution

    f = parse("1/(z1 - w1)", 1)
    with pytest.raises(SingularSubstitution):
        f.substitute([parse("w1", 1), parse("w1", 1)])


@settings(max_examples=40)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=30)
@given(ratfuncs(), st.integers(0, 1), st.integers(0, 1))
def test_mixed_partials_commute(f, u, v):
    assert f.diff(u).diff(v) == f.diff(v).diff(u)


def test_constant_value_detection():
    assert parse("(2 + 2*z1*w1)/(1 + z1*w1)", 1).constant_value() == Scalar(2)
    assert parse("z1", 1).constant_value() is None
    assert RationalFunction.zero(1).constant_value() == Scalar(0)


def test_mirror_conjugate():
    f = parse("(i*z1 + 2)/(1 - i*z1*w1^2)", 1)
    m = f.mirror_conjugate()
    assert m == parse("(-i*w1 + 2)/(1 + i*w1*z1^2)", 1)
    assert m.mirror_conjugate() == f


# -- series ----------------------------------------------------------------------


def series_from(exprs, dim=1):
    return Series([parse(e, dim) for e in exprs])


def test_series_truncation():
    a = series_from(["z1", "1", "0"])
    b = series_from(["w1", "0", "1"])
    prod = a * b
    assert prod[0] == parse("z1*w1", 1)
    assert prod[1] == parse("w1", 1)
    assert prod[2] == parse("z1", 1)


def test_series_shift_down_requires_zeros():
    s = series_from(["0", "z1", "w1"])
    down = s.shift_down()
    assert down[0] == parse("z1", 1) and down.order == 1
    with pytest.raises(ValueError):
        series_from(["z1", "0"]).shift_down()


@settings(max_examples=15)
@given(
    st.lists(ratfuncs(), min_size=3, max_size=3),
    st.lists(ratfuncs(), min_size=3, max_size=3),
    st.lists(ratfuncs(), min_size=3, max_size=3),
)
def test_series_ring_associative_mod_truncation(a, b, c):
    sa, sb, sc = Series(a), Series(b), Series(c)
    assert (sa * sb) * sc == sa * (sb * sc)
    assert (sa + sb) * sc == sa * sc + sb * sc
