"""Exact trace maps, discriminant ideals and fiber analysis for PI algebras."""

from __future__ import annotations

__version__ = "0.1.0"

from .scalars import FieldSpec
from .polyring import PolyRing, MultiPoly, PolyMatrix, IdealGens, bareiss_det
from .pialg import PresentedAlgebra, build_matrix_order, build_quantum_affine, build_structure_constants, pi_degree
from .traces import make_trace, tr_regular, tr_standard, tr_reduced
from .disc import md_generators, d_generators_restricted, free_discriminant, point_gram_rank
from .fibers import specialize, radical, analyze_point
from .weyl import WeylParams, WeylAlgebra, build_weyl

__all__ = [
    "FieldSpec", "PolyRing", "MultiPoly", "PolyMatrix", "IdealGens", "bareiss_det",
    "PresentedAlgebra", "build_matrix_order", "build_quantum_affine", "build_structure_constants", "pi_degree",
    "make_trace", "tr_regular", "tr_standard", "tr_reduced",
    "md_generators", "d_generators_restricted", "free_discriminant", "point_gram_rank",
    "specialize", "radical", "analyze_point",
    "WeylParams", "WeylAlgebra", "build_weyl",
]
