"""Independent oracles the tests check the engine against.

These deliberately avoid the construction paths they certify: the flat
product below is the closed-form exponential formula evaluated term by term,
not the operator recursion.
"""

from fractions import Fraction

from wickstar import Polynomial, RationalFunction, Scalar, Series
from wickstar import multiindex as mi


def flat_wick_product(a: RationalFunction, b: RationalFunction, order: int) -> Series:
    """sum_B nu^{|B|} (1/B!) d_z^B(a) d_w^B(b) on the flat chart."""
    n = a.dim
    coeffs = [RationalFunction.zero(n) for _ in range(order + 1)]
    for r in range(order + 1):
        for beta in mi.with_total(n, r):
            da = a
            for i, k in enumerate(beta):
                for _ in range(k):
                    da = da.diff(i)
            if da.is_zero():
                continue
            db = b
            for i, k in enumerate(beta):
                for _ in range(k):
                    db = db.diff(n + i)
            if db.is_zero():
                continue
            coeffs[r] = coeffs[r] + (da * db).scale(Scalar(Fraction(1, mi.fact(beta))))
    return Series(coeffs)


def poisson_bracket_flat(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """d_z a d_w b - d_z b d_w a summed over directions (flat metric)."""
    n = a.dim
    out = RationalFunction.zero(n)
    for k in range(n):
        out = out + a.diff(k) * b.diff(n + k) - b.diff(k) * a.diff(n + k)
    return out
