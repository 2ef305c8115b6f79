"""Motivic and topological zeta functions of toric surface singularities,
checked against brute-force jet counts over finite fields."""

from .lattice import SurfaceSingularity, resolution_fan
from .zeta import assemble_zeta, igusa_coefficients, igusa_series, zeta_for

__version__ = "0.1.0"

__all__ = [
    "SurfaceSingularity",
    "resolution_fan",
    "assemble_zeta",
    "zeta_for",
    "igusa_series",
    "igusa_coefficients",
    "__version__",
]
