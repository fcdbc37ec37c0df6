"""Rademacher coefficients of the partial fraction decomposition of prod 1/(1 - x^j).

C_{h,k,l}(N) is the coefficient of 1/(x - e^(2 pi i h/k))^l in the
decomposition of prod_{j<=N} 1/(1 - x^j).  The package computes these
exactly (or in checked high precision), evaluates the conjectured limits
R_{h,k,l}, and provides the analyses used to test them.
"""
from .engine import (
    EXACT,
    FLOAT,
    CoeffTriangle,
    CoeffValue,
    FloatAudit,
    ParameterError,
    build_triangle,
    coeff,
    coeff_sequence,
    coefficient_index,
    default_precision,
    get_triangle,
    iter_rows,
    validate_float_backend,
)
from .limits import LimitValue, closed_form_limits, dedekind_sum, rademacher_limit
from .oracle import OracleError, oracle_equivalence, partition_counts, reconstruct_check, taylor_expand

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "CoeffTriangle",
    "CoeffValue",
    "FloatAudit",
    "LimitValue",
    "OracleError",
    "ParameterError",
    "build_triangle",
    "closed_form_limits",
    "coeff",
    "coeff_sequence",
    "coefficient_index",
    "dedekind_sum",
    "default_precision",
    "get_triangle",
    "iter_rows",
    "oracle_equivalence",
    "partition_counts",
    "rademacher_limit",
    "reconstruct_check",
    "taylor_expand",
    "validate_float_backend",
]
