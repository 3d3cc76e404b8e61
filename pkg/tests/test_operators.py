import math

import numpy as np
import pytest

from src.lattice.index_map import build_lattice
from src.models.errors import FieldValidationError, LatticeMismatchError, OrderRangeError
from src.operators.assembly import (
    build_advection,
    build_D,
    build_Jn,
    build_P,
    build_Un,
    conjugate_symmetry_defect,
    projection_tensor,
)
from src.models.schema import InitialConditionSpec
from src.operators.fields import OperatorMatrix, SpectralField
from src.taylor.initial import make_initial
from src.taylor.solver import solve_coefficients


def test_projection_tensor_examples():
    assert np.allclose(projection_tensor((math.pi, 0, 0)), np.diag([0, 1, 1]))
    c = 1.7
    expected = [[0.5, -0.5, 0], [-0.5, 0.5, 0], [0, 0, 1]]
    assert np.allclose(projection_tensor((c, c, 0)), expected)
    assert np.array_equal(projection_tensor((0, 0, 0)), np.zeros((3, 3)))


def test_projection_tensor_is_symmetric_idempotent_projector():
    kappa = np.array([0.3, -1.2, 2.0])
    p = projection_tensor(kappa)
    assert np.allclose(p, p.T)
    assert np.allclose(p @ p, p)
    assert np.allclose(p @ kappa, 0)


def test_diffusion_blocks(unit_viscosity_lattice):
    lattice = unit_viscosity_lattice
    D = build_D(lattice)
    j = lattice.index_of((1, 0, 0))
    assert np.allclose(D.block(j, j), -math.pi**2 * np.eye(3))
    z = lattice.zero_index
    assert np.array_equal(D.block(z, z), np.zeros((3, 3)))
    assert np.count_nonzero(D.entries - np.diag(np.diag(D.entries))) == 0


def test_diffusion_block_at_corner():
    lattice = build_lattice({"L": 2, "nu": 0.01})
    j = lattice.index_of((1, 1, 1))
    assert np.allclose(build_D(lattice).block(j, j), -0.03 * math.pi**2 * np.eye(3))


def test_projection_blocks(lattice2):
    P = build_P(lattice2)
    j = lattice2.index_of((1, 0, 0))
    assert np.allclose(P.block(j, j), -np.diag([0, 1, 1]))
    z = lattice2.zero_index
    assert np.array_equal(P.block(z, z), np.zeros((3, 3)))
    for k in range(lattice2.M):
        B = P.block(k, k)
        assert np.abs(B @ B + B).max() <= 1e-13


def test_diffusion_and_projection_commute(lattice2):
    D, P = build_D(lattice2), build_P(lattice2)
    assert np.abs((D @ P).entries - (P @ D).entries).max() <= 1e-13


def test_projection_output_is_divergence_free(lattice2):
    rng = np.random.default_rng(3)
    v = rng.standard_normal(3 * lattice2.M) + 1j * rng.standard_normal(3 * lattice2.M)
    projected = SpectralField.from_stacked(lattice2, build_P(lattice2) @ v)
    assert projected.divergence_defect() <= 1e-12


def test_advection_of_zero_field_vanishes(lattice2):
    J = build_Jn(lattice2, SpectralField.zeros(lattice2))
    assert np.count_nonzero(J.entries) == 0


def test_advection_single_mode_structure(lattice2):
    a = 0.7
    field = SpectralField.from_modes(lattice2, {(1, 0, 0): (0, a, 0)})
    J = build_Jn(lattice2, field)
    blocks = J.blocks()
    for j in range(lattice2.M):
        for k in range(lattice2.M):
            d = tuple(np.subtract(lattice2.triple_of(j), lattice2.triple_of(k)))
            block = blocks[j, k]
            if d == (1, 0, 0):
                expected = np.zeros((3, 3), dtype=complex)
                expected[1] = 1j * a * lattice2.kappa[j]
                assert np.allclose(block, expected)
            else:
                assert np.count_nonzero(block) == 0


def test_conjugate_symmetry_of_operators(lattice2, random_field):
    assert conjugate_symmetry_defect(build_D(lattice2)) == 0
    assert conjugate_symmetry_defect(build_Jn(lattice2, random_field)) <= 1e-13
    assert conjugate_symmetry_defect(build_Un(lattice2, 0, random_field)) <= 1e-13


@pytest.mark.parametrize("L", [2, 4])
def test_solved_operators_keep_conjugate_symmetry(L):
    lattice = build_lattice({"L": L, "nu": 0.05})
    u0 = make_initial(lattice, InitialConditionSpec(kind="random-solenoidal", seed=4))
    sol = solve_coefficients(u0, 6)
    for U in sol.operators:
        assert conjugate_symmetry_defect(U) <= 1e-13


def test_asymmetric_field_breaks_conjugate_symmetry(lattice2):
    lonely = SpectralField.from_modes(lattice2, {(1, 0, 0): (0, 1.0, 0)})
    assert conjugate_symmetry_defect(build_Jn(lattice2, lonely)) > 0


def test_conjugate_symmetry_defect_absolute(lattice2):
    lonely = SpectralField.from_modes(lattice2, {(1, 0, 0): (0, 3.0, 0)})
    J = build_Jn(lattice2, lonely)
    scale = max(1.0, float(np.abs(J.entries).max()))
    absolute = conjugate_symmetry_defect(J, relative=False)
    assert absolute > 0
    assert absolute == pytest.approx(conjugate_symmetry_defect(J) * scale)


def test_build_Un_cases(lattice2, random_field):
    zero = SpectralField.zeros(lattice2)
    assert np.array_equal(build_Un(lattice2, 0, zero).entries, build_D(lattice2).entries)
    assert np.count_nonzero(build_Un(lattice2, 2, zero).entries) == 0

    U1 = build_Un(lattice2, 1, random_field)
    product = build_P(lattice2) @ build_Jn(lattice2, random_field)
    assert np.allclose(U1.entries, product.entries, rtol=0, atol=1e-13)
    assert np.allclose(build_advection(lattice2, random_field).entries, U1.entries)

    U0 = build_Un(lattice2, 0, random_field)
    assert np.allclose(U0.entries, (build_D(lattice2) + product).entries, rtol=0, atol=1e-13)


def test_linear_only_operator(lattice2, random_field):
    assert np.array_equal(
        build_Un(lattice2, 0, random_field, include_nonlinear=False).entries,
        build_D(lattice2).entries,
    )
    assert np.count_nonzero(build_Un(lattice2, 3, random_field, include_nonlinear=False).entries) == 0


def test_negative_order_rejected(lattice2, random_field):
    with pytest.raises(OrderRangeError):
        build_Un(lattice2, -1, random_field)


def test_lattice_mismatch_rejected(lattice2):
    other = build_lattice({"L": 4})
    with pytest.raises(LatticeMismatchError):
        build_Jn(lattice2, SpectralField.zeros(other))
    with pytest.raises(LatticeMismatchError):
        SpectralField(lattice2, np.zeros((5, 3)))


def test_operators_are_generally_not_normal(lattice2, random_field):
    U = build_Un(lattice2, 1, random_field).entries
    assert np.linalg.norm(U - U.conj().T) > 1e-6
    assert np.linalg.norm(U + U.conj().T) > 1e-6


def test_operator_shape_and_blocks(lattice2):
    U = OperatorMatrix.zeros(lattice2)
    assert U.shape == (81, 81)
    assert U.blocks().shape == (27, 27, 3, 3)


class TestFieldInvariants:
    def test_valid_field_passes(self, random_field, single_mode_field):
        assert random_field.validate() is random_field
        assert single_mode_field.validate() is single_mode_field
        assert random_field.divergence_defect() <= 1e-12
        assert random_field.symmetry_defect() <= 1e-12

    def test_compressible_mode_flagged(self, lattice2):
        field = SpectralField.from_modes(lattice2, {(1, 0, 0): (1, 0, 0), (-1, 0, 0): (1, 0, 0)})
        with pytest.raises(FieldValidationError) as info:
            field.validate()
        assert set(info.value.violations["incompressible"]) == {(1, 0, 0), (-1, 0, 0)}
        assert info.value.violations["conjugate-symmetric"] == []

    def test_mean_flow_flagged(self, lattice2):
        field = SpectralField.from_modes(lattice2, {(0, 0, 0): (1, 0, 0)})
        assert field.violations()["zero-mean"] == [(0, 0, 0)]

    def test_missing_partner_flagged(self, lattice2):
        field = SpectralField.from_modes(lattice2, {(0, 1, 0): (1, 0, 0)})
        found = field.violations()
        assert set(found["conjugate-symmetric"]) == {(0, 1, 0), (0, -1, 0)}
        assert found["incompressible"] == []

    def test_huge_invalid_field_still_flagged(self, lattice2):
        field = SpectralField.from_modes(lattice2, {(1, 0, 0): (1e300, 0, 0)})
        found = field.violations()
        assert found["incompressible"] == [(1, 0, 0)]
        assert set(found["conjugate-symmetric"]) == {(1, 0, 0), (-1, 0, 0)}
        with pytest.raises(FieldValidationError):
            field.validate()

    def test_huge_valid_field_passes(self, random_field):
        huge = random_field * 1e300
        assert huge.validate() is huge
        assert np.isfinite(huge.max_abs())
        assert huge.divergence_defect() <= 1e-12
        assert huge.symmetry_defect() <= 1e-12

    @pytest.mark.parametrize("bad", [np.inf, np.nan])
    def test_non_finite_coefficients_flagged(self, single_mode_field, bad):
        coeffs = single_mode_field.coeffs.copy()
        coeffs[single_mode_field.lattice.index_of((1, 0, 0)), 1] = bad
        field = SpectralField(single_mode_field.lattice, coeffs)
        with pytest.raises(FieldValidationError) as info:
            field.validate()
        assert info.value.violations["finite"] == [(1, 0, 0)]
        assert field.divergence_defect() == np.inf

    def test_coefficients_are_immutable(self, random_field):
        with pytest.raises(ValueError):
            random_field.coeffs[0, 0] = 1.0
