"""Assembly of the block operators D, P, J_n and U_n = delta_{0,n} D + P J_n.

Sign conventions: the minus signs of the diffusion and projection blocks are
folded into D and P, so U = D + P J reproduces the right-hand side of

    (d/dt + nu kappa_j^2) u(kappa_j) = -P(kappa_j) sum_k J(kappa_j, kappa_k) u(kappa_k).

The kappa = 0 block of both D and P is zero (the mean flow is frozen).
"""

import logging

import numpy as np

from src.lattice.index_map import ABSENT, LatticeIndexMap
from src.models.errors import LatticeMismatchError, OrderRangeError
from src.operators.fields import OperatorMatrix, SpectralField

logger = logging.getLogger(__name__)


def projection_tensor(kappa) -> np.ndarray:
    """I - kappa kappa^T / |kappa|^2, or the zero matrix at kappa = 0."""
    kappa = np.asarray(kappa, dtype=float)
    k2 = float(kappa @ kappa)
    if k2 == 0.0:
        return np.zeros((3, 3))
    return np.eye(3) - np.outer(kappa, kappa) / k2


def projection_blocks(lattice: LatticeIndexMap) -> np.ndarray:
    """P(kappa_j) for every lattice point, shape (M, 3, 3)."""
    kappa = lattice.kappa
    outer = kappa[:, :, None] * kappa[:, None, :]
    k2 = lattice.kappa_sq
    safe = np.where(k2 > 0, k2, 1.0)
    blocks = np.eye(3)[None, :, :] - outer / safe[:, None, None]
    blocks[k2 == 0] = 0.0
    return blocks


def build_D(lattice: LatticeIndexMap) -> OperatorMatrix:
    """Block diagonal diffusion operator with blocks -nu kappa_j^2 I."""
    blocks = -lattice.spec.nu * lattice.kappa_sq[:, None, None] * np.eye(3)[None, :, :]
    return OperatorMatrix.block_diagonal(lattice, blocks)


def build_P(lattice: LatticeIndexMap) -> OperatorMatrix:
    """Block diagonal projection operator with blocks -P(kappa_j)."""
    return OperatorMatrix.block_diagonal(lattice, -projection_blocks(lattice))


def _check_field(lattice: LatticeIndexMap, un: SpectralField) -> None:
    if not lattice.is_compatible(un.lattice):
        raise LatticeMismatchError(
            f"Field lives on {un.lattice!r}, operator requested on {lattice!r}"
        )


def advection_blocks(lattice: LatticeIndexMap, un: SpectralField) -> np.ndarray:
    """J_n as an (M, M, 3, 3) array: [j, k, r, c] = i kappa_{j,c} u_{n,r}(kappa_j - kappa_k).

    Pairs whose difference falls off the lattice contribute zero blocks.
    """
    _check_field(lattice, un)
    table = lattice.shift_table
    present = table != ABSENT
    shifted = un.coeffs[np.where(present, table, 0)]
    shifted[~present] = 0.0
    return 1j * shifted[:, :, :, None] * lattice.kappa[:, None, None, :]


def build_Jn(lattice: LatticeIndexMap, un: SpectralField) -> OperatorMatrix:
    return OperatorMatrix.from_blocks(lattice, advection_blocks(lattice, un))


def build_advection(lattice: LatticeIndexMap, un: SpectralField) -> OperatorMatrix:
    """P J_n, computed block-row by block-row (P is block diagonal)."""
    blocks = np.einsum(
        "jab,jkbc->jkac", -projection_blocks(lattice), advection_blocks(lattice, un)
    )
    return OperatorMatrix.from_blocks(lattice, blocks)


def build_Un(
    lattice: LatticeIndexMap, n: int, un: SpectralField, include_nonlinear: bool = True
) -> OperatorMatrix:
    """U_n = delta_{0,n} D + P J_n(u_n).

    include_nonlinear=False drops the P J_n term, leaving D at n = 0 and the
    zero operator otherwise; it exists for testing against closed forms.
    """
    if n < 0:
        raise OrderRangeError(f"Operator order must be >= 0, got {n}")
    _check_field(lattice, un)

    if include_nonlinear:
        operator = build_advection(lattice, un)
    else:
        operator = OperatorMatrix.zeros(lattice)
    if n == 0:
        operator = operator + build_D(lattice)
    return operator


def conjugate_symmetry_defect(matrix: OperatorMatrix, relative: bool = True) -> float:
    """Distance from U*(-kappa_j, -kappa_k) = U(kappa_j, kappa_k).

    Max over (j, k) of the max-norm of block(neg j, neg k) - conj(block(j, k)).
    With relative=True (used for the 1e-13 symmetry check) it is divided by
    max(1, max |entries|); relative=False returns the absolute value.
    """
    blocks = matrix.blocks()
    neg = matrix.lattice.negation
    diff = blocks[np.ix_(neg, neg)] - blocks.conj()
    worst = float(np.abs(diff).max())
    if not relative:
        return worst
    scale = max(1.0, float(np.abs(matrix.entries).max()))
    return worst / scale
