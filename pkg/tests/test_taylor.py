import math

import numpy as np
import pytest

from src.lattice.index_map import build_lattice
from src.models.errors import FieldValidationError, NumericError, OrderRangeError
from src.models.schema import InitialConditionSpec, TaylorSolutionRecord
from src.ncalg.expansions import symbolic_B, symbolic_S
from src.ncalg.polynomial import evaluate_words
from src.operators.fields import SpectralField
from src.taylor.diagnostics import (
    coefficient_norms,
    commutator_norm,
    difference_norms,
    exponential_product_coefficients,
)
from src.taylor.initial import make_initial
from src.taylor.solver import TaylorSolution, evaluate_series, solve_coefficients
from tests.conftest import relative_error


class TestInitialConditions:
    @pytest.mark.parametrize("kind", ["taylor-green", "random-solenoidal"])
    def test_zero_amplitude_gives_zero_field(self, lattice2, kind):
        field = make_initial(lattice2, InitialConditionSpec(kind=kind, amplitude=0.0))
        assert field.norm() == 0

    @pytest.mark.parametrize("seed", [0, 1, 42])
    @pytest.mark.parametrize("L", [2, 4])
    def test_random_solenoidal_invariants(self, seed, L):
        lattice = build_lattice({"L": L})
        spec = InitialConditionSpec(kind="random-solenoidal", seed=seed, amplitude=2.0)
        field = make_initial(lattice, spec)
        assert field.divergence_defect() <= 1e-12
        assert field.symmetry_defect() <= 1e-12
        assert field.mean_defect() == 0
        assert field.norm() == pytest.approx(2.0)

    def test_random_solenoidal_is_reproducible(self, lattice2):
        spec = InitialConditionSpec(kind="random-solenoidal", seed=5)
        first, second = make_initial(lattice2, spec), make_initial(lattice2, spec)
        assert np.array_equal(first.coeffs, second.coeffs)
        other = make_initial(lattice2, spec.model_copy(update={"seed": 6}))
        assert not np.array_equal(first.coeffs, other.coeffs)

    def test_taylor_green_populates_corner_modes(self, lattice2):
        field = make_initial(lattice2, InitialConditionSpec(kind="taylor-green", amplitude=8.0))
        nonzero = {lattice2.triple_of(j) for j in np.flatnonzero(np.abs(field.coeffs).sum(axis=1))}
        assert nonzero == {(a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)}
        assert np.allclose(field.at((1, 1, 1)), (-1j, 1j, 0))
        assert field.violations() == {
            "finite": [],
            "zero-mean": [],
            "incompressible": [],
            "conjugate-symmetric": [],
        }

    def test_explicit_compressible_mode_rejected(self, lattice2):
        spec = InitialConditionSpec(
            kind="explicit",
            modes=[{"triple": (1, 0, 0), "value": ((1, 0), (0, 0), (0, 0))}],
        )
        with pytest.raises(FieldValidationError) as info:
            make_initial(lattice2, spec)
        assert (1, 0, 0) in info.value.violations["incompressible"]

    def test_explicit_mode_outside_lattice_rejected(self, lattice2):
        spec = InitialConditionSpec(
            kind="explicit",
            modes=[{"triple": (2, 0, 0), "value": ((0, 0), (1, 0), (0, 0))}],
        )
        with pytest.raises(FieldValidationError) as info:
            make_initial(lattice2, spec)
        assert info.value.violations["in-lattice"] == [(2, 0, 0)]

    def test_explicit_shear_wave(self, lattice2, single_mode_field):
        spec = InitialConditionSpec(
            kind="explicit",
            modes=[
                {"triple": (1, 0, 0), "value": ((0, 0), (0, 0.5), (0, 0))},
                {"triple": (-1, 0, 0), "value": ((0, 0), (0, -0.5), (0, 0))},
            ],
        )
        assert np.array_equal(make_initial(lattice2, spec).coeffs, single_mode_field.coeffs)


class TestSolveCoefficients:
    def test_first_orders_match_closed_forms(self, random_field):
        sol = solve_coefficients(random_field, 3)
        U0, U1 = sol.operators[0].entries, sol.operators[1].entries
        u0 = random_field.stacked()
        assert relative_error(sol.fields[1].stacked(), U0 @ u0) <= 1e-14
        expected = 0.5 * (U0 @ (U0 @ u0) + U1 @ u0)
        assert relative_error(sol.fields[2].stacked(), expected) <= 1e-12

    def test_zero_initial_flow_stays_zero(self, lattice2):
        sol = solve_coefficients(SpectralField.zeros(lattice2), 5)
        assert all(field.norm() == 0 for field in sol.fields[1:])

    def test_order_zero_is_trivial(self, random_field):
        sol = solve_coefficients(random_field, 0)
        assert sol.order == 0
        assert len(sol.fields) == len(sol.operators) == 1

    def test_negative_order_rejected(self, random_field):
        with pytest.raises(OrderRangeError):
            solve_coefficients(random_field, -1)

    def test_invalid_initial_field_rejected(self, lattice2):
        lonely = SpectralField.from_modes(lattice2, {(0, 1, 0): (1, 0, 0)})
        with pytest.raises(FieldValidationError):
            solve_coefficients(lonely, 2)

    @pytest.mark.parametrize("L, N", [(2, 10), (4, 10)])
    def test_invariants_propagate(self, L, N):
        lattice = build_lattice({"L": L, "nu": 0.05})
        u0 = make_initial(lattice, InitialConditionSpec(kind="random-solenoidal", seed=2))
        sol = solve_coefficients(u0, N)
        for field in sol.fields:
            assert field.divergence_defect() <= 1e-10
            assert field.symmetry_defect() <= 1e-10
            assert field.mean_defect() <= 1e-10

    def test_recursion_matches_symbolic_expansion(self, random_field):
        sol = solve_coefficients(random_field, 6)
        u0 = random_field.stacked()
        for n, poly in enumerate(symbolic_S(6), 1):
            value = evaluate_words(poly, sol.operators[:n], u0)
            assert relative_error(value, sol.fields[n].stacked()) <= 1e-10

    @pytest.mark.parametrize("L", [2, 4])
    def test_linear_only_decay_coefficients(self, L):
        lattice = build_lattice({"L": L, "nu": 0.1})
        u0 = make_initial(lattice, InitialConditionSpec(kind="random-solenoidal", seed=3))
        sol = solve_coefficients(u0, 10, include_nonlinear=False)
        rate = -lattice.spec.nu * lattice.kappa_sq
        for n, field in enumerate(sol.fields):
            expected = (rate**n / math.factorial(n))[:, None] * u0.coeffs
            assert relative_error(field.coeffs, expected) <= 1e-12

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_overflow_raises_numeric_error(self, lattice2):
        spec = InitialConditionSpec(kind="random-solenoidal", seed=2, amplitude=1e200)
        u0 = make_initial(lattice2, spec)
        with pytest.raises(NumericError, match="u_1"):
            solve_coefficients(u0, 3)

    def test_truncated_keeps_leading_orders(self, random_field):
        sol = solve_coefficients(random_field, 4)
        short = sol.truncated(2)
        assert short.order == 2
        assert len(short.operators) == 3
        assert short.fields[2] is sol.fields[2]
        assert sol.truncated(4) is sol
        with pytest.raises(OrderRangeError):
            sol.truncated(5)


class TestEvaluateSeries:
    def test_time_zero_and_truncation_zero(self, random_field):
        sol = solve_coefficients(random_field, 4)
        assert np.array_equal(evaluate_series(sol, 0.0).coeffs, random_field.coeffs)
        assert np.array_equal(evaluate_series(sol, 0.3, truncation=0).coeffs, random_field.coeffs)

    def test_horner_matches_power_sum(self, random_field):
        sol = solve_coefficients(random_field, 5)
        t = 0.01
        direct = sum(field.coeffs * t**n for n, field in enumerate(sol.fields))
        assert relative_error(evaluate_series(sol, t).coeffs, direct) <= 1e-14

    def test_truncation_beyond_order_rejected(self, random_field):
        sol = solve_coefficients(random_field, 2)
        with pytest.raises(OrderRangeError):
            evaluate_series(sol, 0.1, truncation=3)


class TestDiagnostics:
    def test_coefficient_norm_rows(self, random_field):
        rows = coefficient_norms(solve_coefficients(random_field, 4))
        assert [row.n for row in rows] == [0, 1, 2, 3, 4]
        assert rows[0].radius is None
        assert rows[1].radius == pytest.approx(1 / rows[1].norm)

    def test_zero_solution_norms(self, lattice2):
        rows = coefficient_norms(solve_coefficients(SpectralField.zeros(lattice2), 3))
        assert all(row.norm == 0 and row.radius is None for row in rows)

    def test_single_mode_linear_norms_are_exact(self, lattice2, single_mode_field):
        sol = solve_coefficients(single_mode_field, 5, include_nonlinear=False)
        rate = lattice2.spec.nu * math.pi**2
        for row in coefficient_norms(sol):
            expected = rate**row.n / math.factorial(row.n) * single_mode_field.norm()
            assert row.norm == pytest.approx(expected, rel=1e-12)

    def test_difference_norms(self, random_field):
        sol = solve_coefficients(random_field, 4)
        rows = difference_norms(sol)
        assert [row.n for row in rows] == [1, 2, 3, 4]
        assert rows[0].difference_norm == 0
        assert rows[1].difference_norm == 0
        U0, U1 = sol.operators[0], sol.operators[1]
        expected = commutator_norm(U1, U0, random_field.stacked()) / 3
        assert rows[2].difference_norm == pytest.approx(expected, rel=1e-10)
        assert rows[2].difference_norm > 0

    def test_difference_norms_capped(self, random_field):
        sol = solve_coefficients(random_field, 6)
        capped = difference_norms(sol, max_order=3)
        assert [row.n for row in capped] == [1, 2, 3]
        assert capped == difference_norms(sol.truncated(3))
        assert difference_norms(sol, max_order=0) == []

    def test_exponential_product_matches_symbolic_expansion(self, random_field):
        sol = solve_coefficients(random_field, 4)
        u0 = random_field.stacked()
        coefficients = exponential_product_coefficients(sol.operators, u0, 4)
        assert relative_error(coefficients[0], u0) <= 1e-10
        for n, poly in enumerate(symbolic_B(4), 1):
            expected = evaluate_words(poly, sol.operators[:n], u0)
            assert relative_error(coefficients[n], expected) <= 1e-6


class TestRecords:
    def test_record_round_trip(self, random_field):
        sol = solve_coefficients(random_field, 3)
        record = sol.to_record()
        assert record.order == 3
        assert len(record.coefficients) == 4
        assert len(record.triples) == random_field.lattice.M

        restored = TaylorSolution.from_record(
            TaylorSolutionRecord.model_validate_json(record.model_dump_json(by_alias=True))
        )
        assert restored.order == 3
        for a, b in zip(sol.fields, restored.fields):
            assert np.array_equal(a.coeffs, b.coeffs)
        for a, b in zip(sol.operators, restored.operators):
            assert np.array_equal(a.entries, b.entries)
