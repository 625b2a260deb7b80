"""Exact linear solving by fraction-free Gaussian elimination.

Works over any exact field elements supporting +, -, *, /, is_zero() and
zero_like() (Gaussian rationals, rational functions).  Forward elimination
is fraction-free (rows are cross-multiplied against the pivot, never
divided), pivots are chosen as the first exactly-nonzero entry, and the only
divisions happen during back substitution, where they are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

UNIQUE = "unique"
PARTICULAR = "particular"
INCONSISTENT = "inconsistent"


@dataclass
class Solution:
    status: str
    # One solution vector per right-hand side column; free unknowns are zero.
    vectors: Optional[List[List[object]]]
    free_columns: List[int]
    rank: int


def solve(matrix: Sequence[Sequence[object]], rhs: Sequence[Sequence[object]]) -> Solution:
    """Solve M x = b for each right-hand-side column.

    ``matrix`` is a list of rows; ``rhs`` is a list of rows, each carrying the
    entries of every right-hand side (multi-RHS).  Returns a particular
    solution with free unknowns set to zero, or INCONSISTENT.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    nrhs = len(rhs[0]) if nrows and rhs else 0
    if ncols == 0:
        if any(not e.is_zero() for row in rhs for e in row):
            return Solution(INCONSISTENT, None, [], 0)
        return Solution(UNIQUE, [[] for _ in range(nrhs)], [], 0)
    if nrows == 0:
        raise ValueError("no equations for a nonempty unknown vector")

    aug = [list(mr) + list(br) for mr, br in zip(matrix, rhs)]
    width = ncols + nrhs
    pivots: List[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row, nrows):
            if not aug[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != row:
            aug[row], aug[pivot_row] = aug[pivot_row], aug[row]
        piv = aug[row][col]
        for r in range(row + 1, nrows):
            f = aug[r][col]
            if f.is_zero():
                continue
            this = aug[r]
            top = aug[row]
            aug[r] = [piv * this[j] - f * top[j] for j in range(width)]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break

    rank = len(pivots)
    for r in range(rank, nrows):
        for j in range(ncols, width):
            if not aug[r][j].is_zero():
                return Solution(INCONSISTENT, None, [], rank)

    pivot_cols = {c for _, c in pivots}
    free_columns = [c for c in range(ncols) if c not in pivot_cols]
    zero = matrix[0][0].zero_like()
    vectors: List[List[object]] = []
    for k in range(nrhs):
        x = [zero] * ncols
        for r, c in reversed(pivots):
            val = aug[r][ncols + k]
            for j in range(c + 1, ncols):
                if j in pivot_cols and not x[j].is_zero():
                    val = val - aug[r][j] * x[j]
            x[c] = val / aug[r][c]
        vectors.append(x)
    status = UNIQUE if not free_columns else PARTICULAR
    return Solution(status, vectors, free_columns, rank)


def rank(matrix: Sequence[Sequence[object]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    zero_rhs = [[] for _ in matrix]
    return solve(matrix, zero_rhs).rank
