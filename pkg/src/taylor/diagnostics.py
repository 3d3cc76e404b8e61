"""Observational diagnostics of a solved series. Nothing here asserts convergence."""

import logging
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

from src.ncalg.expansions import symbolic_diff
from src.ncalg.polynomial import evaluate_words
from src.operators.fields import OperatorMatrix
from src.taylor.solver import TaylorSolution

logger = logging.getLogger(__name__)


class CoefficientNorm(NamedTuple):
    n: int
    norm: float
    radius: float | None  # root-test estimate ||u_n||^(-1/n); None when undefined


class DifferenceNorm(NamedTuple):
    n: int
    difference_norm: float  # ||(S_n - B_n) u_0||
    coefficient_norm: float  # ||u_n||


def coefficient_norms(sol: TaylorSolution) -> list[CoefficientNorm]:
    rows = []
    for n, field in enumerate(sol.fields):
        norm = field.norm()
        radius = norm ** (-1.0 / n) if n > 0 and norm > 0 else None
        rows.append(CoefficientNorm(n, norm, radius))
    return rows


def difference_norms(sol: TaylorSolution, max_order: int | None = None) -> list[DifferenceNorm]:
    """||D_n u_0|| for n = 1..min(N, max_order) with the solved U_p substituted.

    D_n has up to 2^(n-1) words, so time and memory grow about fourfold per
    order; max_order bounds that cost independently of N.
    """
    top = sol.order if max_order is None else min(sol.order, max_order)
    if top < 1:
        return []
    u0 = sol.fields[0].stacked()
    rows = []
    for n, poly in enumerate(symbolic_diff(top), 1):
        value = evaluate_words(poly, sol.operators, u0)
        rows.append(DifferenceNorm(n, float(np.linalg.norm(value)), sol.fields[n].norm()))
    return rows


def commutator_norm(a: OperatorMatrix, b: OperatorMatrix, v: np.ndarray) -> float:
    """||(ab - ba) v||."""
    v = np.asarray(v)
    return float(np.linalg.norm(a @ (b @ v) - b @ (a @ v)))


def exponential_product_coefficients(
    operators: Sequence[OperatorMatrix],
    u0: np.ndarray,
    order: int,
    samples: int = 64,
    radius: float | None = None,
) -> list[np.ndarray]:
    """Taylor coefficients b_0..b_order of prod_g exp(U_g t^(g+1) / (g+1)) u_0.

    The dense ordered product (U_0 factor leftmost, only U_0..U_{order-1})
    is evaluated at `samples` points on the circle |t| = radius, and the
    coefficients are read off with an FFT (discrete Cauchy integral).
    """
    if samples <= order:
        raise ValueError(f"Need more than {order} samples, got {samples}")
    matrices = [np.asarray(op.entries) for op in operators[:order]]
    if len(matrices) < order:
        raise ValueError(f"Need {order} operators, got {len(operators)}")

    if radius is None:
        scale = max(
            (np.linalg.norm(m, 2) ** (1.0 / (g + 1)) for g, m in enumerate(matrices)),
            default=1.0,
        )
        radius = 1.0 / max(1.0, scale)

    u0 = np.asarray(u0, dtype=complex)
    points = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    values = np.empty((samples, u0.size), dtype=complex)
    for s, t in enumerate(points):
        v = u0
        for g in range(len(matrices) - 1, -1, -1):
            v = expm(matrices[g] * (t ** (g + 1) / (g + 1))) @ v
        values[s] = v

    spectrum = np.fft.fft(values, axis=0) / samples
    logger.debug("exponential product sampled on |t| = %.3g with %d points", radius, samples)
    return [spectrum[m] / radius**m for m in range(order + 1)]
