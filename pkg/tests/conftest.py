import math
from pathlib import Path

import numpy as np
import pytest

from src.lattice.index_map import build_lattice
from src.models.schema import InitialConditionSpec
from src.operators.fields import SpectralField
from src.taylor.initial import make_initial

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def lattice2():
    """L=2, dkappa=pi, nu=0.1."""
    return build_lattice({"L": 2, "nu": 0.1})


@pytest.fixture
def unit_viscosity_lattice():
    return build_lattice({"L": 2, "nu": 1.0, "dkappa": math.pi})


@pytest.fixture
def random_field(lattice2):
    spec = InitialConditionSpec(kind="random-solenoidal", seed=11, amplitude=1.0)
    return make_initial(lattice2, spec)


@pytest.fixture
def single_mode_field(lattice2):
    """Real shear wave: (0, 1/2 i, 0) at (1,0,0) and its conjugate partner."""
    return SpectralField.from_modes(
        lattice2, {(1, 0, 0): (0, 0.5j, 0), (-1, 0, 0): (0, -0.5j, 0)}
    )


def relative_error(actual, expected) -> float:
    actual, expected = np.asarray(actual), np.asarray(expected)
    scale = np.linalg.norm(expected)
    diff = np.linalg.norm(actual - expected)
    return float(diff / scale) if scale > 0 else float(diff)
