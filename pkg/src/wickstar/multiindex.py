"""Multi-index utilities for derivative bookkeeping."""

from __future__ import annotations

from math import comb, factorial
from typing import Iterator, Tuple

MultiIndex = Tuple[int, ...]


def zero(n: int) -> MultiIndex:
    return (0,) * n


def unit(n: int, i: int) -> MultiIndex:
    return tuple(1 if j == i else 0 for j in range(n))


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def order(a: MultiIndex) -> int:
    return sum(a)


def binom(a: MultiIndex, b: MultiIndex) -> int:
    """Product of componentwise binomial coefficients."""
    out = 1
    for x, y in zip(a, b):
        out *= comb(x, y)
    return out


def fact(a: MultiIndex) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def with_total(n: int, total: int) -> Iterator[MultiIndex]:
    """All multi-indices of length n with entries summing to total, lex order."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in with_total(n - 1, total - first):
            yield (first,) + rest


def up_to_total(n: int, max_total: int) -> Iterator[MultiIndex]:
    for t in range(max_total + 1):
        yield from with_total(n, t)


def box(n: int, dmax: int) -> Iterator[MultiIndex]:
    """All multi-indices of length n with every entry at most dmax."""
    if n == 0:
        yield ()
        return
    for first in range(dmax + 1):
        for rest in box(n - 1, dmax):
            yield (first,) + rest


def sub_indices(b: MultiIndex, include_zero: bool = False) -> Iterator[MultiIndex]:
    """All multi-indices beta with beta <= b componentwise."""
    for beta in box_of(b):
        if include_zero or any(beta):
            yield beta


def box_of(b: MultiIndex) -> Iterator[MultiIndex]:
    if not b:
        yield ()
        return
    for first in range(b[0] + 1):
        for rest in box_of(b[1:]):
            yield (first,) + rest
