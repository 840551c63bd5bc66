"""Numerical verification of homological mirror symmetry for del Pezzo
surfaces: Fukaya-side structure constants from q-series, the quiver
algebra of the blown-up (noncommutative) projective plane, the explicit
mirror map between them and an exact triangle-area oracle."""
from .topology import KaehlerClass
from .mirror import build_both_sides, certify, mirror_map

__all__ = ["KaehlerClass", "build_both_sides", "certify", "mirror_map"]
__version__ = "0.1.0"
