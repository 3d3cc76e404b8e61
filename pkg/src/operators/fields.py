"""Value types living on a lattice: stacked spectral fields and 3M x 3M operators."""

import math
from dataclasses import dataclass
from collections.abc import Iterable, Mapping

import numpy as np

from src.lattice.index_map import LatticeIndexMap
from src.models.errors import FieldValidationError, LatticeMismatchError
from src.models.schema import Triple

FIELD_TOLERANCE = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class SpectralField:
    """M complex 3-vectors, one per lattice point (one Taylor coefficient u_n).

    Stacking follows the lattice order: entries 3j, 3j+1, 3j+2 of the stacked
    vector are the three components at flat index j.
    """

    lattice: LatticeIndexMap
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs)
        if coeffs.shape != (self.lattice.M, 3):
            raise LatticeMismatchError(
                f"Field of shape {coeffs.shape} does not fit {self.lattice!r}"
                f" (expected ({self.lattice.M}, 3))"
            )
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    @classmethod
    def zeros(cls, lattice: LatticeIndexMap) -> "SpectralField":
        return cls(lattice, np.zeros((lattice.M, 3), dtype=complex))

    @classmethod
    def from_stacked(cls, lattice: LatticeIndexMap, vector: np.ndarray) -> "SpectralField":
        vector = np.asarray(vector)
        if vector.shape != (3 * lattice.M,):
            raise LatticeMismatchError(
                f"Stacked vector of length {vector.shape} does not fit {lattice!r}"
            )
        return cls(lattice, vector.reshape(lattice.M, 3))

    @classmethod
    def from_modes(
        cls, lattice: LatticeIndexMap, modes: Mapping[Triple, Iterable[complex]]
    ) -> "SpectralField":
        coeffs = np.zeros((lattice.M, 3), dtype=complex)
        for triple, value in modes.items():
            coeffs[lattice.index_of(triple)] = np.asarray(list(value), dtype=complex)
        return cls(lattice, coeffs)

    def stacked(self) -> np.ndarray:
        return self.coeffs.reshape(-1).copy()

    def at(self, triple: Triple) -> np.ndarray:
        return self.coeffs[self.lattice.index_of(triple)].copy()

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    def _normalized(self) -> tuple[np.ndarray, float]:
        """Coefficients divided by their largest |entry|, and that entry.

        Vector norms of the scaled coefficients cannot overflow.
        """
        peak = float(np.abs(self.coeffs).max(initial=0.0))
        if peak == 0 or not np.isfinite(peak):
            return self.coeffs, peak
        return self.coeffs / peak, peak

    def max_abs(self) -> float:
        scaled, peak = self._normalized()
        if peak == 0 or not np.isfinite(peak):
            return peak
        return float(np.linalg.norm(scaled, axis=1).max()) * peak

    def _same_lattice(self, other: "SpectralField") -> None:
        if not self.lattice.is_compatible(other.lattice):
            raise LatticeMismatchError(f"{self.lattice!r} differs from {other.lattice!r}")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._same_lattice(other)
        return SpectralField(self.lattice, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._same_lattice(other)
        return SpectralField(self.lattice, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> "SpectralField":
        return SpectralField(self.lattice, self.coeffs * scalar)

    __rmul__ = __mul__

    def relative_distance(self, other: "SpectralField") -> float:
        """||self - other|| / ||other||, or the absolute distance when other is zero."""
        self._same_lattice(other)
        diff = float(np.linalg.norm(self.coeffs - other.coeffs))
        scale = other.norm()
        return diff / scale if scale > 0 else diff

    # -- invariants -------------------------------------------------------

    def _unit(self) -> np.ndarray | None:
        """Coefficients scaled so that max_k |u_k| = 1; None for zero or non-finite fields."""
        scaled, peak = self._normalized()
        if peak == 0 or not np.isfinite(peak):
            return None
        return scaled / np.linalg.norm(scaled, axis=1).max()

    def divergence_defect(self) -> float:
        """max_j |kappa_j . u_j| / (|kappa_j| max_k |u_k|) over nonzero kappa_j."""
        if not self.is_finite():
            return math.inf
        unit = self._unit()
        if unit is None:
            return 0.0
        lat = self.lattice
        nonzero = lat.kappa_sq > 0
        dots = np.abs(np.einsum("jc,jc->j", lat.kappa, unit))
        return float((dots[nonzero] / np.sqrt(lat.kappa_sq[nonzero])).max())

    def symmetry_defect(self) -> float:
        """max_j |u_{neg j} - conj(u_j)| / max_k |u_k|."""
        if not self.is_finite():
            return math.inf
        unit = self._unit()
        if unit is None:
            return 0.0
        diff = unit[self.lattice.negation] - unit.conj()
        return float(np.linalg.norm(diff, axis=1).max())

    def mean_defect(self) -> float:
        if not self.is_finite():
            return math.inf
        unit = self._unit()
        if unit is None:
            return 0.0
        return float(np.linalg.norm(unit[self.lattice.zero_index]))

    def violations(self, tolerance: float = FIELD_TOLERANCE) -> dict[str, list[Triple]]:
        """Offending triples per invariant; empty lists when the field is valid.

        Non-finite coefficients are reported under "finite" and the other
        invariants are not evaluated.
        """
        lat = self.lattice
        found: dict[str, list[Triple]] = {
            "finite": [],
            "zero-mean": [],
            "incompressible": [],
            "conjugate-symmetric": [],
        }
        bad = ~np.all(np.isfinite(self.coeffs), axis=1)
        if bad.any():
            found["finite"] = [lat.triple_of(j) for j in np.flatnonzero(bad)]
            return found
        unit = self._unit()
        if unit is None:
            return found

        if np.linalg.norm(unit[lat.zero_index]) > tolerance:
            found["zero-mean"].append((0, 0, 0))

        dots = np.abs(np.einsum("jc,jc->j", lat.kappa, unit))
        limit = tolerance * np.sqrt(lat.kappa_sq)
        for j in np.flatnonzero((lat.kappa_sq > 0) & (dots > limit)):
            found["incompressible"].append(lat.triple_of(j))

        mismatch = np.linalg.norm(unit[lat.negation] - unit.conj(), axis=1)
        for j in np.flatnonzero(mismatch > tolerance):
            found["conjugate-symmetric"].append(lat.triple_of(j))
        return found

    def validate(self, tolerance: float = FIELD_TOLERANCE) -> "SpectralField":
        """Return self, or raise FieldValidationError listing offending triples."""
        found = self.violations(tolerance)
        if any(found.values()):
            raise FieldValidationError(found)
        return self


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense 3M x 3M complex operator on a lattice (D, P, J_n, U_n, H_n).

    Entry (3j + r, 3k + c) is position (r, c) of block (j, k).
    """

    lattice: LatticeIndexMap
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries)
        size = 3 * self.lattice.M
        if entries.shape != (size, size):
            raise LatticeMismatchError(
                f"Operator of shape {entries.shape} does not fit {self.lattice!r}"
                f" (expected ({size}, {size}))"
            )
        object.__setattr__(self, "entries", _frozen(entries))

    @classmethod
    def zeros(cls, lattice: LatticeIndexMap) -> "OperatorMatrix":
        size = 3 * lattice.M
        return cls(lattice, np.zeros((size, size), dtype=complex))

    @classmethod
    def from_blocks(cls, lattice: LatticeIndexMap, blocks: np.ndarray) -> "OperatorMatrix":
        """Assemble from an (M, M, 3, 3) array indexed [j, k, r, c]."""
        M = lattice.M
        return cls(lattice, np.asarray(blocks).transpose(0, 2, 1, 3).reshape(3 * M, 3 * M))

    @classmethod
    def block_diagonal(cls, lattice: LatticeIndexMap, blocks: np.ndarray) -> "OperatorMatrix":
        """Assemble from an (M, 3, 3) array of diagonal blocks."""
        M = lattice.M
        full = np.zeros((M, 3, M, 3), dtype=complex)
        idx = np.arange(M)
        full[idx, :, idx, :] = blocks
        return cls(lattice, full.reshape(3 * M, 3 * M))

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def blocks(self) -> np.ndarray:
        """(M, M, 3, 3) view indexed [j, k, r, c]."""
        M = self.lattice.M
        return self.entries.reshape(M, 3, M, 3).transpose(0, 2, 1, 3)

    def block(self, j: int, k: int) -> np.ndarray:
        return self.entries[3 * j : 3 * j + 3, 3 * k : 3 * k + 3].copy()

    def conj_transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(self.lattice, self.entries.conj().T)

    def _same_lattice(self, other) -> None:
        if not self.lattice.is_compatible(other.lattice):
            raise LatticeMismatchError(f"{self.lattice!r} differs from {other.lattice!r}")

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._same_lattice(other)
        return OperatorMatrix(self.lattice, self.entries + other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._same_lattice(other)
        return OperatorMatrix(self.lattice, self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        return OperatorMatrix(self.lattice, self.entries * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            self._same_lattice(other)
            return OperatorMatrix(self.lattice, self.entries @ other.entries)
        if isinstance(other, SpectralField):
            self._same_lattice(other)
            return SpectralField.from_stacked(self.lattice, self.entries @ other.stacked())
        return self.entries @ np.asarray(other)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)
