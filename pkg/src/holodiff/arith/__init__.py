"""Exact arithmetic over Q: polynomials, rational functions, truncated Laurent series, matrices and normal forms."""

from .laurent import LaurentTrunc, laurent_expand
from .matrix import Matrix, PolyMatrix, QMatrix, RatFuncMatrix
from .normal_forms import (
    hermite_column_form,
    local_elementary_divisors,
    polynomial_matrix_kernel,
    smith_normal_form,
)
from .poly import Poly, poly_gcd, poly_lcm
from .rat import Rat, format_rat, frac_part, parse_rat, to_rat
from .ratfunc import RatFunc

__all__ = [
    "LaurentTrunc",
    "Matrix",
    "Poly",
    "PolyMatrix",
    "QMatrix",
    "Rat",
    "RatFunc",
    "RatFuncMatrix",
    "format_rat",
    "frac_part",
    "hermite_column_form",
    "laurent_expand",
    "local_elementary_divisors",
    "parse_rat",
    "poly_gcd",
    "poly_lcm",
    "polynomial_matrix_kernel",
    "smith_normal_form",
    "to_rat",
]
