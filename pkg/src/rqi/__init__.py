"""Numerics for Gaussian quantum information, moving cavities and particle detectors."""

from . import bessel, boson, boxpair, entanglement, fermion, gaussian, nonpert, teleport, udw

__all__ = [
    "bessel",
    "boson",
    "boxpair",
    "entanglement",
    "fermion",
    "gaussian",
    "nonpert",
    "teleport",
    "udw",
]
