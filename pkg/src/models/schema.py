"""
Pydantic models for run configuration and result files.

Models use explicit Field aliases where the external JSON key differs from
the attribute name (for example the series order is written ``N``). Export
with ``model_dump(by_alias=True)`` / ``model_dump_json(by_alias=True)`` to
get the external key names back; input accepts either spelling.

Models
------
LatticeSpec
    Modes per axis ``L`` (even, >= 2), wavenumber spacing ``dkappa``
    (defaults to 2*pi/L when omitted or null) and viscosity ``nu``.
    Frozen, so it can be shared by every object built on the lattice.
ExplicitMode
    One user-given Fourier mode: an integer triple and a complex 3-vector
    written as three ``[re, im]`` pairs.
InitialConditionSpec
    Which initial flow to build: ``taylor-green``, ``random-solenoidal``
    (``seed``, ``decay_exponent``) or ``explicit`` (``explicit_modes``);
    ``amplitude`` scales all three kinds.
IntegratorConfig
    Fixed-step RK4 settings: ``dt``, ``steps`` and ``include_nonlinear``.
CompareSettings
    Times and truncation orders for the Taylor-versus-RK4 comparison.
RunConfig
    Top level configuration for every CLI command. ``schema_version`` must
    be 1. ``difference_norm_order`` caps the orders for which ||D_n u_0||
    is evaluated (the symbolic D_n has 2^(n-1) words; 0 disables it), and
    ``solution_path`` points at a saved taylor_solution.json to analyse
    instead of solving again.
TaylorSolutionRecord
    JSON layout of a solved series: the lattice, the order, the triple of
    every flat index and, per order, M coefficient 3-vectors as
    ``[re, im]`` pairs.
SpectrumDefects / SpectrumReport
    Eigenvalue report for one operator U_n.

Example configuration
---------------------
{
    "schema_version": 1,
    "lattice": {"L": 2, "nu": 0.1},
    "initial": {"kind": "random-solenoidal", "seed": 7, "amplitude": 1.0},
    "N": 4
}
"""

import math
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SCHEMA_VERSION = 1

ComplexPair = tuple[float, float]
Triple = tuple[int, int, int]


def to_pairs(values) -> list[ComplexPair]:
    """Convert complex values into ``[re, im]`` pairs for JSON output."""
    return [(float(z.real), float(z.imag)) for z in np.asarray(values, dtype=complex).ravel()]


def from_pairs(pairs) -> np.ndarray:
    data = np.asarray(pairs, dtype=float)
    values = np.empty(data.shape[:-1], dtype=complex)
    values.real = data[..., 0]
    values.imag = data[..., 1]
    return values


class LatticeSpec(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    L: int = Field(default=2, description="Modes per axis; wavenumbers span -L/2..L/2.")
    dkappa: float = Field(default=math.pi, gt=0, description="Wavenumber spacing.")
    nu: float = Field(default=0.1, gt=0, description="Kinematic viscosity.")

    @model_validator(mode="before")
    @classmethod
    def _default_spacing(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("dkappa") is None:
            modes = data.get("L", 2)
            data = {k: v for k, v in data.items() if k != "dkappa"}
            if isinstance(modes, int) and modes > 0:
                data["dkappa"] = 2 * math.pi / modes
        return data

    @field_validator("L")
    @classmethod
    def _even_modes(cls, value: int) -> int:
        if value < 2 or value % 2:
            raise ValueError(f"L must be an even integer >= 2, got {value}")
        return value

    @property
    def half_width(self) -> int:
        return self.L // 2


class ExplicitMode(BaseModel):
    triple: Triple
    value: tuple[ComplexPair, ComplexPair, ComplexPair]

    def vector(self) -> np.ndarray:
        return from_pairs(self.value)


class InitialConditionSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["taylor-green", "random-solenoidal", "explicit"] = "taylor-green"
    amplitude: float = 1.0
    seed: int = 0
    decay_exponent: float = Field(default=1.0, alias="decay-exponent")
    explicit_modes: list[ExplicitMode] = Field(default_factory=list, alias="modes")


class IntegratorConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    dt: float = Field(default=1e-4, gt=0)
    steps: int = Field(default=100, ge=1)
    include_nonlinear: bool = True

    @property
    def horizon(self) -> float:
        return self.dt * self.steps


class CompareSettings(BaseModel):
    times: list[float] = Field(default_factory=lambda: [0.0, 0.0025, 0.005, 0.01])
    truncations: list[int] = Field(default_factory=lambda: [1, 2, 3], min_length=1)
    slope_tolerance: float = Field(default=0.3, gt=0)
    min_reference_steps: int = Field(default=16, ge=1)

    @field_validator("times")
    @classmethod
    def _nonnegative_times(cls, values: list[float]) -> list[float]:
        if any(t < 0 for t in values):
            raise ValueError("comparison times must be >= 0")
        return sorted(values)


class RunConfig(BaseModel):
    """Top level run configuration shared by every command."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: Literal[1] = SCHEMA_VERSION
    lattice: LatticeSpec = Field(default_factory=LatticeSpec)
    initial: InitialConditionSpec = Field(default_factory=InitialConditionSpec)
    order: int = Field(default=4, ge=0, alias="N")
    include_nonlinear: bool = True
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    compare: CompareSettings = Field(default_factory=CompareSettings)
    symbolic_order: int = Field(default=4, ge=1)
    difference_norm_order: int = Field(default=8, ge=0)
    solution_path: str | None = None
    output_dir: str = "results"
    output_format: Literal["json", "csv"] = "json"


class TaylorSolutionRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: Literal[1] = SCHEMA_VERSION
    lattice: LatticeSpec
    order: int = Field(alias="N")
    include_nonlinear: bool = True
    triples: list[Triple]
    coefficients: list[list[tuple[ComplexPair, ComplexPair, ComplexPair]]]


class SpectrumDefects(BaseModel):
    hermitian: float  # ||U - U^H||_F
    skew: float  # ||U + U^H||_F
    trace: float  # |sum(lambda) - trace(U)| / max(1, |trace(U)|)


class SpectrumReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    eigenvalues: list[ComplexPair]
    max_real_part: float
    min_real_part: float
    conjugate_pair_defect: float
    conjugate_pair_distance: float | None = None  # absolute, undivided
    hermitian_part_extremes: tuple[float, float] = Field(alias="hermitian_extremes")
    defects: SpectrumDefects
    advection_max_real_part: float | None = None
    advection_max_abs_real_part: float | None = None
    self_conjugate_eigenvectors: int | None = None

    @property
    def spectrum(self) -> np.ndarray:
        return from_pairs(self.eigenvalues) if self.eigenvalues else np.zeros(0, dtype=complex)

    @property
    def is_hermitian_defect(self) -> float:
        return self.defects.hermitian

    @property
    def is_skew_defect(self) -> float:
        return self.defects.skew
