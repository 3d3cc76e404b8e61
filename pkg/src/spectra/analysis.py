"""Eigenvalue diagnostics for the operators U_n.

Fourier conjugate symmetry of U_n makes it similar to its complex conjugate
(through the negation permutation), so its spectrum is closed under
conjugation; that closure is measured here. Whether the spectrum of P J_n
is purely imaginary is only reported, as the spectral abscissa
``advection_max_real_part``, never asserted.
"""

import logging

import numpy as np
from scipy import linalg

from src.lattice.index_map import LatticeIndexMap
from src.models.errors import NumericError
from src.models.schema import SpectrumDefects, SpectrumReport, to_pairs
from src.operators.assembly import build_D
from src.operators.fields import OperatorMatrix
from src.taylor.solver import TaylorSolution

logger = logging.getLogger(__name__)

SELF_CONJUGATE_OVERLAP = 1.0 - 1e-8


def hermitian_part(U: OperatorMatrix) -> OperatorMatrix:
    """H = (U + U^H) / 2."""
    return (U + U.conj_transpose()) * 0.5


def _dense(U) -> np.ndarray:
    entries = np.asarray(getattr(U, "entries", U))
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {entries.shape}")
    if not np.all(np.isfinite(entries)):
        raise NumericError("Matrix has non-finite entries")
    return entries


def eigen_spectrum(U) -> np.ndarray:
    """All eigenvalues (with multiplicity) from the dense nonsymmetric solver."""
    entries = _dense(U)
    try:
        return linalg.eigvals(entries, check_finite=False)
    except linalg.LinAlgError as e:
        raise NumericError(f"Eigensolver failed: {e}") from e


def conjugate_pair_defect(eigenvalues: np.ndarray, relative: bool = True) -> float:
    """Largest distance when each eigenvalue is greedily matched to an unused conjugate.

    Eigenvalues are visited in (Re, Im) order. With relative=True (used for
    the 1e-8 pairing check) the distance is divided by max(1, max |lambda|);
    relative=False returns the absolute distance.
    """
    eigenvalues = np.asarray(eigenvalues, dtype=complex)
    if eigenvalues.size == 0:
        return 0.0
    targets = eigenvalues.conj()
    free = np.ones(eigenvalues.size, dtype=bool)
    worst = 0.0
    for i in np.lexsort((eigenvalues.imag, eigenvalues.real)):
        distances = np.where(free, np.abs(targets - eigenvalues[i]), np.inf)
        k = int(np.argmin(distances))
        free[k] = False
        worst = max(worst, float(distances[k]))
    if not relative:
        return worst
    return worst / max(1.0, float(np.abs(eigenvalues).max()))


def self_conjugate_eigenvectors(U: OperatorMatrix) -> int:
    """Count eigenvectors x parallel to their Fourier-conjugate image x*(-kappa)."""
    try:
        _, vectors = linalg.eig(_dense(U), check_finite=False)
    except linalg.LinAlgError as e:
        raise NumericError(f"Eigenvector computation failed: {e}") from e
    lattice = U.lattice
    perm = (3 * lattice.negation[:, None] + np.arange(3)).ravel()
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    images = vectors[perm].conj()
    overlaps = np.abs(np.einsum("im,im->m", vectors.conj(), images))
    return int(np.count_nonzero(overlaps > SELF_CONJUGATE_OVERLAP))


def analyze_Un(
    U: OperatorMatrix,
    n: int,
    advection: OperatorMatrix | None = None,
    eigenvectors: bool = True,
) -> SpectrumReport:
    """Spectrum report for U_n; advection, when given, is P J_n for the abscissa column."""
    eigenvalues = eigen_spectrum(U)
    advection_eigs = eigen_spectrum(advection) if advection is not None else None
    entries = U.entries
    H = hermitian_part(U)
    try:
        h_eigs = linalg.eigvalsh(H.entries)
    except linalg.LinAlgError as e:
        raise NumericError(f"Hermitian eigensolver failed: {e}") from e
    trace = complex(np.trace(entries))

    report = SpectrumReport(
        n=n,
        eigenvalues=to_pairs(eigenvalues),
        max_real_part=float(eigenvalues.real.max()),
        min_real_part=float(eigenvalues.real.min()),
        conjugate_pair_defect=conjugate_pair_defect(eigenvalues),
        conjugate_pair_distance=conjugate_pair_defect(eigenvalues, relative=False),
        hermitian_part_extremes=(float(h_eigs[0]), float(h_eigs[-1])),
        defects=SpectrumDefects(
            hermitian=float(np.linalg.norm(entries - entries.conj().T)),
            skew=float(np.linalg.norm(entries + entries.conj().T)),
            trace=abs(eigenvalues.sum() - trace) / max(1.0, abs(trace)),
        ),
        advection_max_real_part=(
            float(advection_eigs.real.max()) if advection_eigs is not None else None
        ),
        advection_max_abs_real_part=(
            float(np.abs(advection_eigs.real).max()) if advection_eigs is not None else None
        ),
        self_conjugate_eigenvectors=self_conjugate_eigenvectors(U) if eigenvectors else None,
    )
    logger.debug(
        "U_%d: max Re = %.3e, pair defect = %.3e",
        n,
        report.max_real_part,
        report.conjugate_pair_defect,
    )
    return report


def stability_sweep(sol: TaylorSolution, eigenvectors: bool = True) -> list[SpectrumReport]:
    """analyze_Un for every stored order, with P J_n reported separately (P J_0 = U_0 - D).

    Raises
    ------
    NumericError
        The analysis of some U_n failed; the message names the order.
    """
    diffusion = build_D(sol.lattice)
    reports = []
    for n, U in enumerate(sol.operators):
        advection = U - diffusion if n == 0 else U
        try:
            reports.append(analyze_Un(U, n, advection=advection, eigenvectors=eigenvectors))
        except NumericError as e:
            raise NumericError(f"U_{n}: {e}") from e
    return reports


def analytic_diffusion_spectrum(lattice: LatticeIndexMap) -> np.ndarray:
    """{-nu kappa_j^2, each three times}, sorted ascending."""
    return np.sort(np.repeat(-lattice.spec.nu * lattice.kappa_sq, 3))


def diffusion_spectrum_defect(lattice: LatticeIndexMap) -> float:
    """Max relative distance between the computed and analytic spectra of D."""
    computed = np.sort(eigen_spectrum(build_D(lattice)).real)
    analytic = analytic_diffusion_spectrum(lattice)
    scale = max(1.0, float(np.abs(analytic).max()))
    return float(np.abs(computed - analytic).max() / scale)
