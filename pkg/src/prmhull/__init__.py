"""Projective Reed-Muller codes over GF(q): construction, duals, hulls,
closed-form dimension and distance results, and exact linear-algebra oracles
that cross-check every formula.
"""

from .errors import (
    BadLambdasError,
    DegreeMismatchError,
    DimensionMismatchError,
    DivisionByZeroError,
    InternalDisagreementError,
    NotCoveredError,
    NotPrimeError,
    OutOfRangeError,
    PrmHullError,
    ReducibleModulusError,
)
from .field import (
    FieldElement,
    FieldSpec,
    field_from_order,
    field_make,
    is_irreducible,
    is_prime,
    prime_power_decomposition,
)
from .geometry import (
    Monomial,
    ProjectivePoint,
    enumerate_monomials,
    enumerate_standard_points,
    evaluate,
    evaluation_matrix,
    monomial_matrix,
    point_count,
    point_matrix,
    reduce_exponents,
)
from .gfmatrix import (
    GfMatrix,
    echelon,
    format_matrix,
    gram,
    in_rowspace,
    left_nullspace,
    matmul,
    nullspace,
    rank,
    read_matrix,
    reduce_rows_against,
    row_basis,
    rowspace_intersection,
    rowspaces_equal,
    rref,
    stack,
    write_matrix,
)
from .oracle import (
    DEFAULT_CAP,
    CheckRecord,
    InstanceReport,
    OracleResult,
    brute_min_weight,
    hull_exact,
    run_sweep,
    verify_instance,
)
from .prm import (
    FLAG_ORDER,
    DistanceDecomposition,
    DualStructure,
    HullFormula,
    HullReport,
    MinWeightWitness,
    PrmCode,
    build_code,
    build_report,
    classify,
    distance_decomposition,
    dual_order,
    dual_structure,
    excluded_monomials,
    full_order,
    hull_dim_formula,
    hull_lower_bound,
    hull_min_distance,
    min_weight_witness,
    prm_dimension,
    prm_min_distance,
    reduced_exponent_rows,
)

__version__ = "0.1.0"

__all__ = [
    "BadLambdasError",
    "CheckRecord",
    "DEFAULT_CAP",
    "DegreeMismatchError",
    "DimensionMismatchError",
    "DistanceDecomposition",
    "DivisionByZeroError",
    "DualStructure",
    "FieldElement",
    "FieldSpec",
    "FLAG_ORDER",
    "GfMatrix",
    "HullFormula",
    "HullReport",
    "InstanceReport",
    "InternalDisagreementError",
    "MinWeightWitness",
    "Monomial",
    "NotCoveredError",
    "NotPrimeError",
    "OracleResult",
    "OutOfRangeError",
    "PrmCode",
    "PrmHullError",
    "ProjectivePoint",
    "ReducibleModulusError",
    "brute_min_weight",
    "build_code",
    "build_report",
    "classify",
    "distance_decomposition",
    "dual_order",
    "dual_structure",
    "echelon",
    "enumerate_monomials",
    "enumerate_standard_points",
    "evaluate",
    "evaluation_matrix",
    "excluded_monomials",
    "field_from_order",
    "field_make",
    "format_matrix",
    "full_order",
    "gram",
    "hull_dim_formula",
    "hull_exact",
    "hull_lower_bound",
    "hull_min_distance",
    "in_rowspace",
    "is_irreducible",
    "is_prime",
    "left_nullspace",
    "matmul",
    "min_weight_witness",
    "monomial_matrix",
    "nullspace",
    "point_count",
    "point_matrix",
    "prime_power_decomposition",
    "prm_dimension",
    "prm_min_distance",
    "rank",
    "read_matrix",
    "reduce_exponents",
    "reduce_rows_against",
    "reduced_exponent_rows",
    "row_basis",
    "rowspace_intersection",
    "rowspaces_equal",
    "rref",
    "run_sweep",
    "stack",
    "verify_instance",
    "write_matrix",
]
