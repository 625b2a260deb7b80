"""Truncated formal power series in the deformation parameter.

A Series of order N keeps coefficients c_0..c_N and discards everything of
higher order, so ring identities hold exactly modulo the (N+1)-st power of
the parameter.  Coefficients may be any value type supporting +, -, * and
zero_like() (rational functions, scalars, forms).
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


class Series:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[T]):
        if not coeffs:
            raise ValueError("a series needs at least the order-0 coefficient")
        self.coeffs = tuple(coeffs)

    @staticmethod
    def constant(value: T, order: int) -> "Series":
        zero = value.zero_like()
        return Series((value,) + (zero,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, r: int) -> T:
        return self.coeffs[r]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.coeffs[: order + 1])

    def __add__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series([self.coeffs[r] + other.coeffs[r] for r in range(n + 1)])

    def __sub__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series([self.coeffs[r] - other.coeffs[r] for r in range(n + 1)])

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs])

    def __mul__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        zero = self.coeffs[0].zero_like()
        out = [zero] * (n + 1)
        for r, a in enumerate(self.coeffs[: n + 1]):
            for s in range(n + 1 - r):
                out[r + s] = out[r + s] + a * other.coeffs[s]
        return Series(out)

    def scale(self, factor) -> "Series":
        return Series([c * factor for c in self.coeffs])

    def map(self, fn: Callable[[T], T]) -> "Series":
        return Series([fn(c) for c in self.coeffs])

    def shift_up(self, k: int = 1) -> "Series":
        """Multiply by the k-th power of the formal parameter (same order)."""
        zero = self.coeffs[0].zero_like()
        return Series(((zero,) * k + self.coeffs)[: len(self.coeffs)])

    def shift_down(self, k: int = 1) -> "Series":
        """Divide by the k-th power of the parameter; the low coefficients must vanish.

        The result has order reduced by k (the top coefficients are no longer
        known exactly after a truncated computation).
        """
        if self.order < k:
            raise ValueError("series order too low to shift down")
        for r in range(k):
            if not self.coeffs[r].is_zero():
                raise ValueError(f"cannot divide: order-{r} coefficient is nonzero")
        return Series(self.coeffs[k:])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[r] == other.coeffs[r] for r in range(n + 1))

    def __repr__(self):
        return f"Series({list(self.coeffs)!r})"
