from src.operators.assembly import (
    build_advection,
    build_D,
    build_Jn,
    build_P,
    build_Un,
    conjugate_symmetry_defect,
    projection_tensor,
)
from src.operators.fields import OperatorMatrix, SpectralField

__all__ = [
    "OperatorMatrix",
    "SpectralField",
    "build_advection",
    "build_D",
    "build_Jn",
    "build_P",
    "build_Un",
    "conjugate_symmetry_defect",
    "projection_tensor",
]
