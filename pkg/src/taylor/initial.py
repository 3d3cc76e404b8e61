"""Initial flows u_0: Taylor-Green, random solenoidal, or explicit modes.

Every generator returns a zero-mean, divergence-free, conjugate-symmetric
field; explicit modes are validated rather than repaired.
"""

import itertools
import logging

import numpy as np

from src.lattice.index_map import LatticeIndexMap
from src.models.errors import FieldValidationError
from src.models.schema import InitialConditionSpec
from src.operators.assembly import projection_blocks
from src.operators.fields import SpectralField

logger = logging.getLogger(__name__)


def _taylor_green(lattice: LatticeIndexMap, spec: InitialConditionSpec) -> SpectralField:
    # u = A (sin x cos y cos z, -cos x sin y cos z, 0) on the (+-1, +-1, +-1) modes
    a = spec.amplitude / 8
    modes = {
        (s1, s2, s3): (-1j * a * s1, 1j * a * s2, 0.0)
        for s1, s2, s3 in itertools.product((-1, 1), repeat=3)
    }
    return SpectralField.from_modes(lattice, modes)


def _random_solenoidal(lattice: LatticeIndexMap, spec: InitialConditionSpec) -> SpectralField:
    rng = np.random.default_rng(spec.seed)
    shape = (lattice.M, 3)
    raw = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)

    k2 = lattice.kappa_sq
    weights = np.zeros(lattice.M)
    weights[k2 > 0] = k2[k2 > 0] ** (-spec.decay_exponent / 2)
    projected = np.einsum("jab,jb->ja", projection_blocks(lattice), raw * weights[:, None])
    symmetric = 0.5 * (projected + projected[lattice.negation].conj())

    norm = np.linalg.norm(symmetric)
    if norm > 0:
        symmetric *= spec.amplitude / norm
    return SpectralField(lattice, symmetric)


def _explicit(lattice: LatticeIndexMap, spec: InitialConditionSpec) -> SpectralField:
    outside = [m.triple for m in spec.explicit_modes if not lattice.contains(m.triple)]
    seen, repeated = set(), []
    for mode in spec.explicit_modes:
        if mode.triple in seen:
            repeated.append(mode.triple)
        seen.add(mode.triple)
    if outside or repeated:
        raise FieldValidationError({"in-lattice": outside, "unique": repeated})

    coeffs = np.zeros((lattice.M, 3), dtype=complex)
    for mode in spec.explicit_modes:
        coeffs[lattice.index_of(mode.triple)] = spec.amplitude * mode.vector()
    return SpectralField(lattice, coeffs)


_BUILDERS = {
    "taylor-green": _taylor_green,
    "random-solenoidal": _random_solenoidal,
    "explicit": _explicit,
}


def make_initial(lattice: LatticeIndexMap, spec: InitialConditionSpec) -> SpectralField:
    """Build and validate u_0.

    Raises
    ------
    FieldValidationError
        The field (explicit modes) is not zero-mean, incompressible and
        conjugate symmetric; the error lists the offending triples.
    """
    field = _BUILDERS[spec.kind](lattice, spec)
    logger.debug("Initial %s field with norm %.6g", spec.kind, field.norm())
    return field.validate()
