from src.spectra.analysis import (
    analytic_diffusion_spectrum,
    analyze_Un,
    conjugate_pair_defect,
    diffusion_spectrum_defect,
    eigen_spectrum,
    hermitian_part,
    self_conjugate_eigenvectors,
    stability_sweep,
)

__all__ = [
    "analytic_diffusion_spectrum",
    "analyze_Un",
    "conjugate_pair_defect",
    "diffusion_spectrum_defect",
    "eigen_spectrum",
    "hermitian_part",
    "self_conjugate_eigenvectors",
    "stability_sweep",
]
