"""Taylor series against the RK4 reference at small times."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from src.models.errors import ConfigurationError
from src.models.schema import IntegratorConfig
from src.operators.fields import SpectralField
from src.refint.rk4 import integrate_to
from src.taylor.solver import TaylorSolution, evaluate_series

logger = logging.getLogger(__name__)

SLOPE_POINTS = 3
COMPARISON_HEADER = ["t", "truncation", "relative_error"]


class ComparisonRow(NamedTuple):
    t: float
    truncation: int
    relative_error: float


@dataclass
class ComparisonTable:
    rows: list[ComparisonRow] = field(default_factory=list)
    slopes: dict[int, float | None] = field(default_factory=dict)

    def errors_for(self, truncation: int) -> list[tuple[float, float]]:
        return [(r.t, r.relative_error) for r in self.rows if r.truncation == truncation]

    def slopes_within(self, tolerance: float) -> bool:
        """Every fitted slope lies within tolerance of truncation + 1."""
        return all(
            slope is not None and abs(slope - (n + 1)) <= tolerance
            for n, slope in self.slopes.items()
        )


def fitted_slope(points: Sequence[tuple[float, float]], count: int = SLOPE_POINTS) -> float | None:
    """Least-squares log-log slope over the `count` smallest positive times."""
    usable = sorted((t, e) for t, e in points if t > 0 and e > 0)[:count]
    if len(usable) < 2:
        return None
    t, e = np.array(usable).T
    return float(np.polyfit(np.log(t), np.log(e), 1)[0])


def compare_taylor_vs_reference(
    sol: TaylorSolution,
    cfg: IntegratorConfig,
    times: Sequence[float],
    truncations: Sequence[int] | None = None,
    min_steps: int = 16,
) -> ComparisonTable:
    """Relative error of the truncated series against RK4, per time and truncation.

    The reference for each t runs at least `min_steps` steps no longer than
    cfg.dt, ending exactly on t.
    """
    if cfg.include_nonlinear != sol.include_nonlinear:
        raise ConfigurationError("Integrator and series disagree on include_nonlinear")
    if times and max(times) > cfg.horizon * (1 + 1e-12):
        raise ConfigurationError(
            f"Comparison time {max(times):g} beyond the integration horizon {cfg.horizon:g}"
        )
    truncations = list(truncations) if truncations is not None else [sol.order]

    u0 = sol.fields[0]
    table = ComparisonTable()
    for t in sorted(times):
        reference = integrate_to(u0, t, cfg.dt, cfg.include_nonlinear, min_steps)
        for n in truncations:
            error = evaluate_series(sol, t, n).relative_distance(reference)
            table.rows.append(ComparisonRow(t, n, error))

    for n in truncations:
        table.slopes[n] = fitted_slope(table.errors_for(n))
        logger.info("truncation %d: fitted slope %s", n, table.slopes[n])
    return table


def linear_remainder_bound(u0: SpectralField, t: float, N: int) -> float:
    """Relative Lagrange bound on the truncated linear series at time t.

    Mode kappa decays as exp(-x) with x = nu kappa^2 t; truncating after
    order N leaves at most x^(N+1)/(N+1)! of it.
    """
    x = u0.lattice.spec.nu * u0.lattice.kappa_sq * t
    bound = x ** (N + 1) / math.factorial(N + 1)
    exact = np.linalg.norm(np.exp(-x)[:, None] * u0.coeffs)
    if exact == 0:
        return 0.0
    return float(np.linalg.norm(bound[:, None] * u0.coeffs) / exact)
