"""Lie algebra actions and Chevalley-Eilenberg cohomology in low degree.

A LieAction is a finite-dimensional Lie algebra given by structure constants
c^i_{jk} (so [xi_j, xi_k] = sum_i c^i_{jk} xi_i) together with one vector
field per basis element; the field assignment must be a Lie algebra
anti-homomorphism, [X_j, X_k] = -sum_i c^i_{jk} X_i, and every field must
preserve the complex structure.

With trivial coefficients the differential is
(d tau)(x, y) = -tau([x, y]) on 1-cochains and
(d lam)(x, y, z) = -lam([x,y], z) + lam([x,z], y) - lam([y,z], x)
on 2-cochains; H^1 and H^2 ranks are computed exactly over the scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linsolve
from .errors import ValidationError
from .fields import VectorField
from .scalars import Scalar
from .series import Series
from .symmetry import check_holomorphy


def _scale_value(value, c: Scalar):
    """Scale a Series or a plain coefficient by a Scalar."""
    if isinstance(value, Series):
        return value.map(lambda v: v.scale(c))
    return value.scale(c)


def _zero_value(value):
    if isinstance(value, Series):
        return value.map(lambda v: v.zero_like())
    return value.zero_like()


class LieAction:
    def __init__(
        self,
        structure: Dict[Tuple[int, int, int], Scalar],
        fields: Sequence[VectorField],
        names: Optional[Sequence[str]] = None,
    ):
        """``structure[(i, j, k)]`` is c^i_{jk} for j < k (0-based indices)."""
        self.m = len(fields)
        self.fields = tuple(fields)
        self.names = tuple(names) if names else tuple(f"xi{i + 1}" for i in range(self.m))
        table: Dict[Tuple[int, int, int], Scalar] = {}
        for (i, j, k), c in structure.items():
            if not all(0 <= t < self.m for t in (i, j, k)):
                raise ValidationError(f"structure index out of range: {(i, j, k)}")
            if j == k and not c.is_zero():
                raise ValidationError(f"nonzero c^{i}_{{{j}{k}}} violates antisymmetry")
            if j > k:
                i, j, k, c = i, k, j, -c
            prev = table.get((i, j, k))
            if prev is not None and prev != c:
                raise ValidationError(f"conflicting structure constants at {(i, j, k)}")
            table[(i, j, k)] = c
        self.structure = {key: c for key, c in table.items() if not c.is_zero()}

    @property
    def dim_algebra(self) -> int:
        return self.m

    def c(self, i: int, j: int, k: int) -> Scalar:
        """c^i_{jk} with antisymmetry filled in."""
        if j == k:
            return Scalar(0)
        if j < k:
            return self.structure.get((i, j, k), Scalar(0))
        return -self.structure.get((i, k, j), Scalar(0))

    def bracket_coeffs(self, j: int, k: int) -> List[Scalar]:
        return [self.c(i, j, k) for i in range(self.m)]

    def bracket_field(self, j: int, k: int) -> VectorField:
        out = VectorField.zero(self.fields[0].dim)
        for i in range(self.m):
            ci = self.c(i, j, k)
            if not ci.is_zero():
                out = out + self.fields[i].scale(ci)
        return out

    def pairs(self):
        return combinations(range(self.m), 2)

    def apply_on_bracket(self, cochain: Sequence, j: int, k: int):
        """Evaluate a 1-cochain on [xi_j, xi_k] by linearity."""
        out = None
        for i in range(self.m):
            ci = self.c(i, j, k)
            if ci.is_zero():
                continue
            term = _scale_value(cochain[i], ci)
            out = term if out is None else out + term
        if out is None:
            return _zero_value(cochain[0])
        return out


@dataclass(frozen=True)
class ActionCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ActionReport:
    checks: Tuple[ActionCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[ActionCheck]:
        return [c for c in self.checks if not c.ok]


def validate_action(action: LieAction) -> ActionReport:
    """Exact check of all LieAction invariants: Jacobi, anti-homomorphism,
    holomorphy of every field."""
    m = action.m
    checks: List[ActionCheck] = []

    jacobi_ok = True
    for j, k, l in combinations(range(m), 3):
        for i in range(m):
            acc = Scalar(0)
            for q in range(m):
                acc = acc + action.c(q, j, k) * action.c(i, q, l)
                acc = acc + action.c(q, k, l) * action.c(i, q, j)
                acc = acc + action.c(q, l, j) * action.c(i, q, k)
            if not acc.is_zero():
                jacobi_ok = False
                checks.append(
                    ActionCheck("jacobi", False, f"fails at (i,j,k,l)=({i + 1},{j + 1},{k + 1},{l + 1})")
                )
    if jacobi_ok:
        checks.append(ActionCheck("jacobi", True))

    anti_ok = True
    for j, k in action.pairs():
        lhs = action.fields[j].bracket(action.fields[k])
        rhs = action.bracket_field(j, k).scale(Scalar(-1))
        if not lhs == rhs:
            anti_ok = False
            checks.append(
                ActionCheck(
                    "anti-homomorphism",
                    False,
                    f"[X_{j + 1}, X_{k + 1}] != -sum c^i X_i",
                )
            )
    if anti_ok:
        checks.append(ActionCheck("anti-homomorphism", True))

    hol_ok = True
    for i, x in enumerate(action.fields):
        if not check_holomorphy(x):
            hol_ok = False
            checks.append(ActionCheck("holomorphy", False, f"X_{i + 1} does not preserve I"))
    if hol_ok:
        checks.append(ActionCheck("holomorphy", True))
    return ActionReport(tuple(checks))


# -- Chevalley-Eilenberg with trivial coefficients ---------------------------------


def d1_matrix(action: LieAction) -> List[List[Scalar]]:
    """Matrix of tau -> -tau([.,.]) from C^1 to C^2 (rows: pairs j<k)."""
    rows = []
    for j, k in action.pairs():
        rows.append([-action.c(i, j, k) for i in range(action.m)])
    return rows


def d2_matrix(action: LieAction) -> List[List[Scalar]]:
    """Matrix of the degree-2 differential from C^2 to C^3 (rows: triples)."""
    m = action.m
    pair_index = {p: i for i, p in enumerate(action.pairs())}

    def entry_contrib(row, p: int, q: int, sign: Scalar):
        # lam(xi_p, xi_q) with alternating extension.
        if p == q:
            return
        if p < q:
            row[pair_index[(p, q)]] = row[pair_index[(p, q)]] + sign
        else:
            row[pair_index[(q, p)]] = row[pair_index[(q, p)]] - sign

    rows = []
    for x, y, z in combinations(range(m), 3):
        row = [Scalar(0)] * len(pair_index)
        for i in range(m):
            entry_contrib(row, i, z, -action.c(i, x, y))
            entry_contrib(row, i, y, action.c(i, x, z))
            entry_contrib(row, i, x, -action.c(i, y, z))
        rows.append(row)
    return rows


def apply_d2(action: LieAction, lam: Dict[Tuple[int, int], Series]) -> Dict[Tuple[int, int, int], Series]:
    """(d lam)(x,y,z) for a Series-valued 2-cochain."""
    out = {}

    def ev(p, q):
        if p < q:
            return lam[(p, q)]
        return -lam[(q, p)]

    m = action.m
    for x, y, z in combinations(range(m), 3):
        acc = None
        for i in range(m):
            for coef, val in (
                (-action.c(i, x, y), (i, z)),
                (action.c(i, x, z), (i, y)),
                (-action.c(i, y, z), (i, x)),
            ):
                if coef.is_zero() or val[0] == val[1]:
                    continue
                term = ev(*val).map(lambda c, cc=coef: c.scale(cc))
                acc = term if acc is None else acc + term
        if acc is None:
            any_val = next(iter(lam.values()))
            acc = any_val.map(lambda c: c.zero_like())
        out[(x, y, z)] = acc
    return out


def cohomology_ranks(action: LieAction) -> Tuple[int, int]:
    """(dim H^1, dim H^2) with trivial coefficients, exact ranks."""
    m = action.m
    npairs = m * (m - 1) // 2
    r1 = linsolve.rank(d1_matrix(action)) if m >= 1 and npairs >= 1 else 0
    h1 = m - r1
    if npairs == 0:
        return h1, 0
    ntriples = m * (m - 1) * (m - 2) // 6
    r2 = linsolve.rank(d2_matrix(action)) if ntriples >= 1 else 0
    h2 = (npairs - r2) - r1
    return h1, h2


@dataclass
class CoboundaryResult:
    status: str  # "solved" or "obstructed"
    tau: Optional[List[Series]]  # per basis element, Series of Scalars
    h1: int
    h2: int
    obstruction: Optional[Dict[Tuple[int, int], Series]] = None
    unique: bool = False


def solve_coboundary(
    action: LieAction, lam: Dict[Tuple[int, int], Series], order: Optional[int] = None
) -> CoboundaryResult:
    """Solve d tau = lam over the scalars, order by order.

    Returns tau (free components zero) or the obstruction: the class of lam
    is nonzero exactly when some order has no solution.
    """
    h1, h2 = cohomology_ranks(action)
    m = action.m
    pairs = list(action.pairs())
    if not pairs:
        tau = [Series.constant(Scalar(0), order or 0) for _ in range(m)]
        return CoboundaryResult("solved", tau, h1, h2, unique=(h1 == 0))
    order = min(lam[p].order for p in pairs) if order is None else order
    matrix = d1_matrix(action)
    rhs = [[lam[p][s] for s in range(order + 1)] for p in pairs]
    sol = linsolve.solve(matrix, rhs)
    if sol.status == linsolve.INCONSISTENT:
        return CoboundaryResult("obstructed", None, h1, h2, obstruction=lam)
    tau = [Series([sol.vectors[s][i] for s in range(order + 1)]) for i in range(m)]
    return CoboundaryResult("solved", tau, h1, h2, unique=(h1 == 0))
