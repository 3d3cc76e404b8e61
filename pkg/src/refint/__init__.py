from src.refint.comparison import (
    ComparisonRow,
    ComparisonTable,
    compare_taylor_vs_reference,
    fitted_slope,
    linear_remainder_bound,
)
from src.refint.rk4 import (
    TrajectoryPoint,
    integrate,
    integrate_to,
    rhs,
    self_convergence_slope,
    trajectory_rows,
)

__all__ = [
    "ComparisonRow",
    "ComparisonTable",
    "TrajectoryPoint",
    "compare_taylor_vs_reference",
    "fitted_slope",
    "integrate",
    "integrate_to",
    "linear_remainder_bound",
    "rhs",
    "self_convergence_slope",
    "trajectory_rows",
]
