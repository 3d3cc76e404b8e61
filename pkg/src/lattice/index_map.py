"""Discrete wavenumber lattice and its index maps.

Flat indices j run over 0..M-1 with M = (L+1)^3. Index j is assigned to the
integer triple (l1, l2, l3), each in -L/2..L/2, in lexicographic order with
l1 varying slowest:

    j = ((l1 + L/2) * (L+1) + (l2 + L/2)) * (L+1) + (l3 + L/2)

The wavevector at index j is (l1, l2, l3) * dkappa.
"""

import logging
from collections import Counter
from collections.abc import Mapping
from typing import Any

import numpy as np
from pydantic import ValidationError

from src.models.errors import ConfigurationError, LatticeIndexError
from src.models.schema import LatticeSpec, Triple

logger = logging.getLogger(__name__)

ABSENT = -1  # marker in the shift table for differences outside the lattice


def _read_only(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class LatticeIndexMap:
    """Bijection between flat indices and integer wavenumber triples.

    Attributes
    ----------
    spec : LatticeSpec
    M : int
        Number of lattice points, (L+1)^3.
    triples : ndarray, shape (M, 3), int
        Integer triple of every flat index.
    kappa : ndarray, shape (M, 3), float
        Wavevector of every flat index.
    kappa_sq : ndarray, shape (M,)
        Squared wavenumber, computed from the integer triples so that
        kappa_sq[neg(j)] == kappa_sq[j] holds bit for bit.
    negation : ndarray, shape (M,), int
        Index of the negated triple.
    shift_table : ndarray, shape (M, M), int
        shift_table[j, k] is the index of triple_j - triple_k, or ABSENT.

    All arrays are read-only; the map is immutable after construction.
    """

    def __init__(self, spec: LatticeSpec):
        self.spec = spec
        self.side = spec.L + 1
        self.M = self.side**3
        h = spec.half_width

        axis = np.arange(-h, h + 1)
        l1, l2, l3 = np.meshgrid(axis, axis, axis, indexing="ij")
        self.triples = _read_only(np.stack([l1.ravel(), l2.ravel(), l3.ravel()], axis=1))
        self.kappa = _read_only(self.triples * spec.dkappa)
        self.kappa_sq = _read_only((self.triples**2).sum(axis=1) * spec.dkappa**2)
        self.negation = _read_only(self._flat(-self.triples))

        diff = self.triples[:, None, :] - self.triples[None, :, :]
        inside = np.all(np.abs(diff) <= h, axis=-1)
        table = np.full((self.M, self.M), ABSENT, dtype=int)
        table[inside] = self._flat(diff[inside])
        self.shift_table = _read_only(table)

        logger.debug("Built lattice L=%d with M=%d points", spec.L, self.M)

    def __repr__(self) -> str:
        return f"LatticeIndexMap(L={self.spec.L}, M={self.M}, dkappa={self.spec.dkappa:g})"

    def _flat(self, triples: np.ndarray) -> np.ndarray:
        shifted = np.asarray(triples) + self.spec.half_width
        return (shifted[..., 0] * self.side + shifted[..., 1]) * self.side + shifted[..., 2]

    def _check(self, j: int) -> int:
        if not 0 <= j < self.M:
            raise LatticeIndexError(f"Index {j} outside 0..{self.M - 1}")
        return int(j)

    def contains(self, triple) -> bool:
        h = self.spec.half_width
        return all(-h <= int(l) <= h for l in triple)

    def index_of(self, triple) -> int:
        if len(triple) != 3 or not self.contains(triple):
            raise LatticeIndexError(f"Triple {tuple(triple)} is not on the L={self.spec.L} lattice")
        return int(self._flat(np.asarray(triple, dtype=int)))

    def triple_of(self, j: int) -> Triple:
        l1, l2, l3 = self.triples[self._check(j)]
        return int(l1), int(l2), int(l3)

    def wavenumber_of(self, j: int) -> np.ndarray:
        return self.kappa[self._check(j)].copy()

    def negation_index(self, j: int) -> int:
        return int(self.negation[self._check(j)])

    def shift_index(self, j: int, k: int) -> int | None:
        """Index of triple_j - triple_k, or None when it falls off the lattice."""
        shifted = int(self.shift_table[self._check(j), self._check(k)])
        return None if shifted == ABSENT else shifted

    @property
    def zero_index(self) -> int:
        return self.index_of((0, 0, 0))

    def shift_pair_count(self) -> int:
        return int(np.count_nonzero(self.shift_table != ABSENT))

    def squared_norm_counts(self) -> dict[int, int]:
        """Number of triples per integer squared norm l1^2 + l2^2 + l3^2."""
        counts = Counter(int(s) for s in (self.triples**2).sum(axis=1))
        return dict(sorted(counts.items()))

    def is_compatible(self, other: "LatticeIndexMap") -> bool:
        return other is self or other.spec == self.spec


def build_lattice(spec: LatticeSpec | Mapping[str, Any]) -> LatticeIndexMap:
    """Validate a lattice spec and build its index map.

    Raises
    ------
    ConfigurationError
        Odd or too small L, nonpositive dkappa or nu.
    """
    if not isinstance(spec, LatticeSpec):
        try:
            spec = LatticeSpec.model_validate(dict(spec))
        except ValidationError as e:
            raise ConfigurationError(f"Invalid lattice spec: {e}") from e

    # Specs built with model_construct skip validation, so check again here.
    if not isinstance(spec.L, int) or spec.L < 2 or spec.L % 2:
        raise ConfigurationError(f"L must be an even integer >= 2, got {spec.L!r}")
    if not spec.dkappa > 0:
        raise ConfigurationError(f"dkappa must be positive, got {spec.dkappa!r}")
    if not spec.nu > 0:
        raise ConfigurationError(f"nu must be positive, got {spec.nu!r}")
    return LatticeIndexMap(spec)
