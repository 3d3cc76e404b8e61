from src.taylor.diagnostics import (
    CoefficientNorm,
    DifferenceNorm,
    coefficient_norms,
    commutator_norm,
    difference_norms,
    exponential_product_coefficients,
)
from src.taylor.initial import make_initial
from src.taylor.solver import TaylorSolution, evaluate_series, solve_coefficients

__all__ = [
    "CoefficientNorm",
    "DifferenceNorm",
    "TaylorSolution",
    "coefficient_norms",
    "commutator_norm",
    "difference_norms",
    "evaluate_series",
    "exponential_product_coefficients",
    "make_initial",
    "solve_coefficients",
]
