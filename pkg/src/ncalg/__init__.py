from src.ncalg.expansions import (
    coefficient_sum,
    render_family,
    symbolic_B,
    symbolic_diff,
    symbolic_S,
    term_count,
)
from src.ncalg.polynomial import (
    IDENTITY,
    NCPolynomial,
    Word,
    evaluate_words,
    format_polynomial,
    graded_weight,
    nc_add,
    nc_mul,
    parse_polynomial,
)

__all__ = [
    "IDENTITY",
    "NCPolynomial",
    "Word",
    "coefficient_sum",
    "evaluate_words",
    "format_polynomial",
    "graded_weight",
    "nc_add",
    "nc_mul",
    "parse_polynomial",
    "render_family",
    "symbolic_B",
    "symbolic_diff",
    "symbolic_S",
    "term_count",
]
