"""Exact Wick-type star products on Kahler charts.

Construction from potential-derivative data, complete finite certificates
(associativity, defining relation, separation of variables), invariance and
quasi-innerness tests, and the quantum momentum mapping pipeline with its
scalar obstruction cocycle.  All arithmetic is exact; there is no floating
point anywhere.
"""

from .chart import Chart, Metric
from .errors import (
    InputError,
    InternalConsistencyError,
    NotClosedError,
    RecursionSingularError,
    SingularSubstitution,
    ValidationError,
    WickError,
)
from .expr import parse, render_ratfunc, render_scalar, render_series
from .fields import ChartMap, VectorField
from .forms import Form
from .lie import LieAction, cohomology_ranks, solve_coboundary, validate_action
from .momentum import (
    berezin_toeplitz,
    bt_momentum,
    check_strong_invariance,
    classical_momentum,
    lambda_cocycle,
    momentum_map,
    potential_momentum,
    quantum_hamiltonian,
    verify_equivariance,
    verify_momentum_decomposition,
    verify_quantum_hamiltonian,
)
from .operators import DiffOperator
from .poly import Polynomial
from .ratfunc import RationalFunction
from .scalars import Scalar
from .series import Series
from .star import StarProduct, flat_chart
from .symmetry import (
    PrimitiveAnsatz,
    check_automorphism,
    check_derivation,
    check_holomorphy,
    check_quasi_inner,
    find_primitive,
    hamiltonian_vector_field,
    quasi_inner_primitive,
)

__all__ = [
    "Chart",
    "ChartMap",
    "DiffOperator",
    "Form",
    "InputError",
    "InternalConsistencyError",
    "LieAction",
    "Metric",
    "NotClosedError",
    "Polynomial",
    "PrimitiveAnsatz",
    "RationalFunction",
    "RecursionSingularError",
    "Scalar",
    "Series",
    "SingularSubstitution",
    "StarProduct",
    "ValidationError",
    "VectorField",
    "WickError",
    "berezin_toeplitz",
    "bt_momentum",
    "check_automorphism",
    "check_derivation",
    "check_holomorphy",
    "check_quasi_inner",
    "check_strong_invariance",
    "classical_momentum",
    "cohomology_ranks",
    "find_primitive",
    "flat_chart",
    "hamiltonian_vector_field",
    "lambda_cocycle",
    "momentum_map",
    "parse",
    "potential_momentum",
    "quantum_hamiltonian",
    "quasi_inner_primitive",
    "render_ratfunc",
    "render_scalar",
    "render_series",
    "solve_coboundary",
    "validate_action",
    "verify_equivariance",
    "verify_momentum_decomposition",
    "verify_quantum_hamiltonian",
]

__version__ = "0.1.0"
