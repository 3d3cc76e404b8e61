"""Classical fixed-step RK4 for du/dt = (D + P J(u)) u, with J rebuilt at every stage."""

import logging
import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from src.models.errors import IntegrationDivergenceError
from src.models.schema import IntegratorConfig
from src.operators.assembly import build_Un
from src.operators.fields import SpectralField

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = ["t", "l1", "l2", "l3", "re_u1", "im_u1", "re_u2", "im_u2", "re_u3", "im_u3"]


class TrajectoryPoint(NamedTuple):
    t: float
    field: SpectralField


def rhs(u: SpectralField, include_nonlinear: bool = True) -> SpectralField:
    """U(u) u = (D + P J(u)) u, or D u alone when include_nonlinear is False."""
    return build_Un(u.lattice, 0, u, include_nonlinear) @ u


def _step(u: SpectralField, dt: float, include_nonlinear: bool) -> SpectralField:
    k1 = rhs(u, include_nonlinear)
    k2 = rhs(u + k1 * (dt / 2), include_nonlinear)
    k3 = rhs(u + k2 * (dt / 2), include_nonlinear)
    k4 = rhs(u + k3 * dt, include_nonlinear)
    return u + (k1 + k2 * 2 + k3 * 2 + k4) * (dt / 6)


def integrate(u0: SpectralField, cfg: IntegratorConfig) -> list[TrajectoryPoint]:
    """Trajectory at t = 0, dt, ..., steps*dt.

    Raises
    ------
    IntegrationDivergenceError
        A step produced non-finite coefficients.
    """
    u0.validate()
    trajectory = [TrajectoryPoint(0.0, u0)]
    u = u0
    for step in range(1, cfg.steps + 1):
        u = _step(u, cfg.dt, cfg.include_nonlinear)
        t = step * cfg.dt
        if not np.all(np.isfinite(u.coeffs)):
            raise IntegrationDivergenceError(step, t)
        trajectory.append(TrajectoryPoint(t, u))
    logger.debug("RK4: %d steps of dt=%g, |u(T)| = %.6e", cfg.steps, cfg.dt, u.norm())
    return trajectory


def integrate_to(
    u0: SpectralField, t: float, dt: float, include_nonlinear: bool = True, min_steps: int = 1
) -> SpectralField:
    """u(t) with the step shrunk so that a whole number of steps lands on t exactly."""
    if t == 0:
        return u0
    steps = max(min_steps, math.ceil(t / dt - 1e-9))
    cfg = IntegratorConfig(dt=t / steps, steps=steps, include_nonlinear=include_nonlinear)
    return integrate(u0, cfg)[-1].field


def self_convergence_slope(
    u0: SpectralField,
    horizon: float,
    dts: Sequence[float],
    include_nonlinear: bool = True,
    reference: SpectralField | None = None,
) -> tuple[float, list[float]]:
    """Log-log slope of the endpoint error against dt.

    Without an explicit reference the endpoint from a step eight times
    smaller than the smallest dt is used.
    """
    if reference is None:
        reference = integrate_to(u0, horizon, min(dts) / 8, include_nonlinear)
    errors = [
        integrate_to(u0, horizon, dt, include_nonlinear).relative_distance(reference)
        for dt in dts
    ]
    slope = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    return slope, errors


def trajectory_rows(trajectory: Sequence[TrajectoryPoint]) -> list[list]:
    rows = []
    for point in trajectory:
        lattice = point.field.lattice
        for j, vector in enumerate(point.field.coeffs):
            row = [point.t, *lattice.triple_of(j)]
            for z in vector:
                row += [float(z.real), float(z.imag)]
            rows.append(row)
    return rows
