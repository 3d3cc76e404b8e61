"""Recursive Taylor-in-time solution of du/dt = U(u) u.

With u(t) = sum_n u_n t^n the operator becomes sum_n U_n t^n, where
U_n = delta_{0,n} D + P J_n(u_n) is fixed once u_n is known, and matching
powers of t gives

    u_n = (1/n) sum_{p=0}^{n-1} U_p u_{n-1-p}.

Order n only needs U_0..U_{n-1}, so the solver alternates: compute u_n from
the operators already built, then build U_n from u_n.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.lattice.index_map import build_lattice
from src.models.errors import LatticeMismatchError, NumericError, OrderRangeError
from src.models.schema import TaylorSolutionRecord, from_pairs, to_pairs
from src.operators.assembly import build_Un
from src.operators.fields import OperatorMatrix, SpectralField

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TaylorSolution:
    fields: tuple[SpectralField, ...]
    operators: tuple[OperatorMatrix, ...]
    include_nonlinear: bool = True

    @property
    def lattice(self):
        return self.fields[0].lattice

    @property
    def order(self) -> int:
        return len(self.fields) - 1

    def truncated(self, order: int) -> "TaylorSolution":
        """The first order + 1 coefficients and operators."""
        if not 0 <= order <= self.order:
            raise OrderRangeError(f"Truncation {order} outside 0..{self.order}")
        if order == self.order:
            return self
        return TaylorSolution(
            self.fields[: order + 1], self.operators[: order + 1], self.include_nonlinear
        )

    def to_record(self) -> TaylorSolutionRecord:
        lattice = self.lattice
        return TaylorSolutionRecord(
            lattice=lattice.spec,
            order=self.order,
            include_nonlinear=self.include_nonlinear,
            triples=[lattice.triple_of(j) for j in range(lattice.M)],
            coefficients=[
                [tuple(to_pairs(vector)) for vector in field.coeffs] for field in self.fields
            ],
        )

    @classmethod
    def from_record(cls, record: TaylorSolutionRecord) -> "TaylorSolution":
        """Rebuild a solution from its JSON record; operators are reassembled from the fields."""
        lattice = build_lattice(record.lattice)
        stored = [tuple(t) for t in record.triples]
        expected = [lattice.triple_of(j) for j in range(lattice.M)]
        if stored != expected:
            raise LatticeMismatchError("Stored triples do not follow the lattice ordering")

        fields = tuple(
            SpectralField(lattice, from_pairs(coeffs)) for coeffs in record.coefficients
        )
        operators = tuple(
            build_Un(lattice, n, field, record.include_nonlinear) for n, field in enumerate(fields)
        )
        return cls(fields, operators, record.include_nonlinear)


def solve_coefficients(
    u0: SpectralField, N: int, include_nonlinear: bool = True
) -> TaylorSolution:
    """Solve for u_1..u_N and build U_0..U_N.

    Raises
    ------
    FieldValidationError
        u0 is not zero-mean, incompressible and conjugate symmetric.
    OrderRangeError
        N < 0.
    NumericError
        Some u_n overflowed to non-finite values.
    """
    if N < 0:
        raise OrderRangeError(f"Series order must be >= 0, got {N}")
    u0.validate()
    lattice = u0.lattice

    fields = [u0]
    vectors = [u0.stacked()]
    operators = [build_Un(lattice, 0, u0, include_nonlinear)]
    for n in range(1, N + 1):
        total = np.zeros_like(vectors[0])
        for p in range(n):
            total += operators[p].entries @ vectors[n - 1 - p]
        un = SpectralField.from_stacked(lattice, total / n)
        if not un.is_finite():
            raise NumericError(f"Non-finite coefficients in u_{n} (order {n} of {N})")
        fields.append(un)
        vectors.append(un.stacked())
        operators.append(build_Un(lattice, n, un, include_nonlinear))
        logger.debug("order %d: |u_n| = %.6e", n, un.norm())

    return TaylorSolution(tuple(fields), tuple(operators), include_nonlinear)


def evaluate_series(sol: TaylorSolution, t: float, truncation: int | None = None) -> SpectralField:
    """sum_{n=0}^{truncation} u_n t^n by Horner's scheme (truncation defaults to N)."""
    if truncation is None:
        truncation = sol.order
    if not 0 <= truncation <= sol.order:
        raise OrderRangeError(f"Truncation {truncation} outside 0..{sol.order}")

    acc = sol.fields[truncation].coeffs.copy()
    for n in range(truncation - 1, -1, -1):
        acc = acc * t + sol.fields[n].coeffs
    return SpectralField(sol.lattice, acc)
